#pragma once

// Exact data model: torus coordinates, weights with multiplicities and the
// piecewise-linear rho functions built from them.

#include "temper/errors.hpp"
#include "temper/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace temper {

/// Covector on an ambient coordinate space Q^n.
class LinearForm {
public:
    LinearForm() = default;
    explicit LinearForm(RVec coefficients) : c_(std::move(coefficients)) {}
    LinearForm(std::initializer_list<Rational> coefficients) : c_(coefficients) {}

    static LinearForm zero(std::size_t n) { return LinearForm(RVec(n)); }
    static LinearForm unit(std::size_t n, std::size_t i);
    /// e_i - e_j
    static LinearForm difference(std::size_t n, std::size_t i, std::size_t j);

    std::size_t arity() const { return c_.size(); }
    const RVec& coefficients() const { return c_; }
    const Rational& operator[](std::size_t i) const { return c_[i]; }

    bool is_zero() const;
    /// Sign of the first nonzero coefficient (0 for the zero form).
    int leading_sign() const;
    LinearForm sign_normalized() const { return leading_sign() < 0 ? -*this : *this; }

    Rational operator()(const RVec& y) const { return dot(c_, y); }
    Rational operator()(const IVec& y) const { return dot(c_, y); }

    LinearForm operator-() const;
    LinearForm& operator+=(const LinearForm& o);
    LinearForm& operator-=(const LinearForm& o);
    friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
    friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }
    friend LinearForm operator*(const Rational& s, LinearForm a);

    friend bool operator==(const LinearForm&, const LinearForm&) = default;
    friend auto operator<=>(const LinearForm& a, const LinearForm& b) { return a.c_ <=> b.c_; }

private:
    RVec c_;
};

/// The split torus a, realized as the subspace of Q^n cut out by linear
/// equality constraints. Forms and vectors live in ambient coordinates.
class TorusSpace {
public:
    explicit TorusSpace(std::size_t ambient_dim, std::vector<LinearForm> constraints = {},
                        std::vector<std::string> labels = {});

    std::size_t ambient_dim() const { return n_; }
    std::size_t dim() const { return n_ - constraints_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    /// Constraints in reduced row echelon form.
    const std::vector<LinearForm>& constraints() const { return constraints_; }

    bool contains(const RVec& y) const;
    bool contains(const IVec& y) const;
    /// Throws InputError on arity mismatch or constraint violation.
    void require(const RVec& y) const;

    /// Canonical representative of the restriction of `f` to the slice: the
    /// unique form equal to `f` on the slice that vanishes on the pivot
    /// coordinates of the constraints.
    LinearForm reduce(const LinearForm& f) const;
    bool vanishes(const LinearForm& f) const { return reduce(f).is_zero(); }

    /// Integral basis of the slice (one vector per free coordinate).
    const std::vector<IVec>& basis() const { return basis_; }

    friend bool operator==(const TorusSpace& a, const TorusSpace& b) {
        return a.n_ == b.n_ && a.constraints_ == b.constraints_;
    }

private:
    std::size_t n_;
    std::vector<LinearForm> constraints_;
    std::vector<std::size_t> pivots_;
    std::vector<std::string> labels_;
    std::vector<IVec> basis_;
};

using SpacePtr = std::shared_ptr<const TorusSpace>;

SpacePtr make_space(std::size_t ambient_dim, std::vector<LinearForm> constraints = {},
                    std::vector<std::string> labels = {});

struct Weight {
    LinearForm form;
    std::int64_t mult = 1;
    friend bool operator==(const Weight&, const Weight&) = default;
};

/// a-weight decomposition of a module: distinct weights with multiplicities.
class WeightModule {
public:
    WeightModule() = default;
    WeightModule(SpacePtr space, std::vector<Weight> weights, std::string name = {});

    const SpacePtr& space() const { return space_; }
    const std::vector<Weight>& weights() const { return weights_; }
    const std::string& name() const { return name_; }
    std::int64_t total_dim() const;
    std::int64_t multiplicity(const LinearForm& form) const;

    /// Same weights over another space with the same ambient dimension.
    WeightModule with_space(SpacePtr space) const;
    WeightModule renamed(std::string name) const;
    /// Every multiplicity multiplied by k.
    WeightModule scaled(std::int64_t k) const;

    friend bool operator==(const WeightModule& a, const WeightModule& b) {
        return a.weights_ == b.weights_ && *a.space_ == *b.space_;
    }

private:
    SpacePtr space_;
    std::vector<Weight> weights_; // sorted by form, merged
    std::string name_;
};

WeightModule direct_sum(const WeightModule& a, const WeightModule& b, std::string name = {});

/// Re-expresses a module in the coordinates of `target`, whose j-th coordinate
/// vector maps to `images[j]` in the ambient space of `m`.
WeightModule pullback(const WeightModule& m, SpacePtr target, const std::vector<RVec>& images);

struct AbsTerm {
    Rational coef;
    LinearForm form;
    friend bool operator==(const AbsTerm&, const AbsTerm&) = default;
};

/// f(Y) = sum_i c_i |alpha_i(Y)| + l(Y), positively homogeneous of degree one.
class PLFunction {
public:
    PLFunction() = default;
    PLFunction(SpacePtr space, std::vector<AbsTerm> abs_terms, LinearForm linear);
    static PLFunction zero(SpacePtr space);

    const SpacePtr& space() const { return space_; }
    const std::vector<AbsTerm>& abs_terms() const { return terms_; }
    const LinearForm& linear_term() const { return linear_; }

    /// Exact value; Y must lie in the torus slice.
    Rational evaluate(const RVec& y) const;
    /// Exact value without the slice membership check.
    Rational evaluate_unchecked(const RVec& y) const;
    Rational evaluate_unchecked(const IVec& y) const;

    /// Forms reduced modulo the constraints, scaled to primitive integral
    /// vectors (scale moved into the coefficient), sign-normalized, merged and
    /// sorted; zero coefficients and forms vanishing on the slice dropped.
    /// Two functions agree on the slice iff their canonical forms are equal.
    PLFunction canonical() const;
    bool equals_on_space(const PLFunction& o) const;
    bool is_even() const;

    PLFunction operator-() const;
    friend PLFunction operator+(const PLFunction& a, const PLFunction& b);
    friend PLFunction operator-(const PLFunction& a, const PLFunction& b) { return a + (-b); }
    friend PLFunction operator*(const Rational& s, const PLFunction& f);

    friend bool operator==(const PLFunction& a, const PLFunction& b) {
        return a.terms_ == b.terms_ && a.linear_ == b.linear_ && *a.space_ == *b.space_;
    }

private:
    SpacePtr space_;
    std::vector<AbsTerm> terms_;
    LinearForm linear_;
};

/// Weight data of a pair h in g: the h-module h, the h-module g/h and an
/// optional extra module V, all over the same torus.
struct PairSpec {
    WeightModule g_module; ///< g/h
    WeightModule h_module;
    std::optional<WeightModule> v_module;
    std::map<std::string, std::string> metadata;

    const SpacePtr& space() const { return h_module.space(); }
    /// Throws InputError when the modules do not share a torus.
    void validate() const;
};

Rational evaluate_pl(const PLFunction& f, const RVec& y);
/// Sum of m_alpha * alpha(Y) over the weights positive at Y.
Rational rho_plus(const WeightModule& m, const RVec& y);
/// 1/2 sum m_alpha |alpha(Y)| as a PL function.
PLFunction rho_function(const WeightModule& m);
/// rho_{g/h} + 2 rho_V - rho_h.
PLFunction deficit(const PairSpec& spec);

} // namespace temper
