#include "temper/core.hpp"

#include "temper/linalg.hpp"

#include <algorithm>

namespace temper {

LinearForm LinearForm::unit(std::size_t n, std::size_t i) {
    RVec c(n);
    c.at(i) = 1;
    return LinearForm(std::move(c));
}

LinearForm LinearForm::difference(std::size_t n, std::size_t i, std::size_t j) {
    RVec c(n);
    c.at(i) += 1;
    c.at(j) -= 1;
    return LinearForm(std::move(c));
}

bool LinearForm::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Rational& x) { return x.is_zero(); });
}

int LinearForm::leading_sign() const {
    for (const auto& x : c_)
        if (!x.is_zero()) return x.sign();
    return 0;
}

LinearForm LinearForm::operator-() const {
    RVec c = c_;
    for (auto& x : c) x = -x;
    return LinearForm(std::move(c));
}

LinearForm& LinearForm::operator+=(const LinearForm& o) {
    if (o.arity() != arity()) throw InputError("linear form arity mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& o) {
    if (o.arity() != arity()) throw InputError("linear form arity mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

LinearForm operator*(const Rational& s, LinearForm a) {
    for (auto& x : a.c_) x *= s;
    return a;
}

// ---------------------------------------------------------------------------

TorusSpace::TorusSpace(std::size_t ambient_dim, std::vector<LinearForm> constraints,
                       std::vector<std::string> labels)
    : n_(ambient_dim), labels_(std::move(labels)) {
    if (!labels_.empty() && labels_.size() != n_)
        throw InputError("torus space: expected " + std::to_string(n_) + " coordinate labels, got " +
                         std::to_string(labels_.size()));
    std::vector<RVec> rows;
    for (const auto& c : constraints) {
        if (c.arity() != n_)
            throw InputError("torus space: constraint arity " + std::to_string(c.arity()) +
                             " does not match ambient dimension " + std::to_string(n_));
        rows.push_back(c.coefficients());
    }
    if (!rows.empty()) {
        RowEchelon e = row_reduce(RMatrix::from_rows(rows, n_));
        for (std::size_t i = 0; i < e.rank(); ++i) constraints_.emplace_back(e.reduced.row(i));
        pivots_ = e.pivots;
    }
    std::vector<bool> is_pivot(n_, false);
    for (auto p : pivots_) is_pivot[p] = true;
    for (std::size_t f = 0; f < n_; ++f) {
        if (is_pivot[f]) continue;
        RVec v(n_);
        v[f] = 1;
        for (std::size_t k = 0; k < constraints_.size(); ++k) v[pivots_[k]] = -constraints_[k][f];
        basis_.push_back(primitive_integer(v));
    }
}

bool TorusSpace::contains(const RVec& y) const {
    if (y.size() != n_) return false;
    return std::all_of(constraints_.begin(), constraints_.end(),
                       [&](const LinearForm& c) { return c(y).is_zero(); });
}

bool TorusSpace::contains(const IVec& y) const {
    if (y.size() != n_) return false;
    return std::all_of(constraints_.begin(), constraints_.end(),
                       [&](const LinearForm& c) { return c(y).is_zero(); });
}

void TorusSpace::require(const RVec& y) const {
    if (y.size() != n_)
        throw InputError("vector arity " + std::to_string(y.size()) + " does not match ambient dimension " +
                         std::to_string(n_));
    if (!contains(y)) throw InputError("vector violates the torus constraints");
}

LinearForm TorusSpace::reduce(const LinearForm& f) const {
    if (f.arity() != n_) throw InputError("linear form arity does not match the torus space");
    RVec g = f.coefficients();
    for (std::size_t k = 0; k < constraints_.size(); ++k) {
        Rational s = g[pivots_[k]];
        if (s.is_zero()) continue;
        const RVec& c = constraints_[k].coefficients();
        for (std::size_t j = 0; j < n_; ++j)
            if (!c[j].is_zero()) g[j] -= s * c[j];
    }
    return LinearForm(std::move(g));
}

SpacePtr make_space(std::size_t ambient_dim, std::vector<LinearForm> constraints, std::vector<std::string> labels) {
    return std::make_shared<const TorusSpace>(ambient_dim, std::move(constraints), std::move(labels));
}

// ---------------------------------------------------------------------------

WeightModule::WeightModule(SpacePtr space, std::vector<Weight> weights, std::string name)
    : space_(std::move(space)), name_(std::move(name)) {
    if (!space_) throw InputError("weight module without a torus space");
    std::map<LinearForm, std::int64_t> merged;
    for (auto& w : weights) {
        if (w.form.arity() != space_->ambient_dim())
            throw InputError("weight arity " + std::to_string(w.form.arity()) + " does not match ambient dimension " +
                             std::to_string(space_->ambient_dim()));
        if (w.mult <= 0) throw InputError("weight multiplicity must be positive");
        merged[w.form] = checked::add(merged[w.form], w.mult);
    }
    weights_.reserve(merged.size());
    for (auto& [form, mult] : merged) weights_.push_back({form, mult});
}

std::int64_t WeightModule::total_dim() const {
    std::int64_t d = 0;
    for (const auto& w : weights_) d = checked::add(d, w.mult);
    return d;
}

std::int64_t WeightModule::multiplicity(const LinearForm& form) const {
    auto it = std::lower_bound(weights_.begin(), weights_.end(), form,
                               [](const Weight& w, const LinearForm& f) { return w.form < f; });
    return (it != weights_.end() && it->form == form) ? it->mult : 0;
}

WeightModule WeightModule::with_space(SpacePtr space) const {
    if (!space || space->ambient_dim() != space_->ambient_dim())
        throw InputError("with_space: ambient dimension mismatch");
    WeightModule m = *this;
    m.space_ = std::move(space);
    return m;
}

WeightModule WeightModule::renamed(std::string name) const {
    WeightModule m = *this;
    m.name_ = std::move(name);
    return m;
}

WeightModule WeightModule::scaled(std::int64_t k) const {
    if (k <= 0) throw InputError("scaled: factor must be positive");
    WeightModule m = *this;
    for (auto& w : m.weights_) w.mult = checked::mul(w.mult, k);
    return m;
}

WeightModule direct_sum(const WeightModule& a, const WeightModule& b, std::string name) {
    if (!(*a.space() == *b.space())) throw InputError("direct sum of modules over different tori");
    std::vector<Weight> ws = a.weights();
    ws.insert(ws.end(), b.weights().begin(), b.weights().end());
    return WeightModule(a.space(), std::move(ws), std::move(name));
}

WeightModule pullback(const WeightModule& m, SpacePtr target, const std::vector<RVec>& images) {
    if (images.size() != target->ambient_dim()) throw InputError("pullback: one image per target coordinate required");
    std::vector<Weight> ws;
    for (const auto& w : m.weights()) {
        RVec c(images.size());
        for (std::size_t j = 0; j < images.size(); ++j) c[j] = w.form(images[j]);
        ws.push_back({LinearForm(std::move(c)), w.mult});
    }
    return WeightModule(std::move(target), std::move(ws), m.name());
}

// ---------------------------------------------------------------------------

PLFunction::PLFunction(SpacePtr space, std::vector<AbsTerm> abs_terms, LinearForm linear)
    : space_(std::move(space)), terms_(std::move(abs_terms)), linear_(std::move(linear)) {
    if (!space_) throw InputError("PL function without a torus space");
    if (linear_.arity() != space_->ambient_dim()) throw InputError("PL function: linear term arity mismatch");
    for (const auto& t : terms_)
        if (t.form.arity() != space_->ambient_dim()) throw InputError("PL function: abs-term arity mismatch");
}

PLFunction PLFunction::zero(SpacePtr space) {
    auto n = space->ambient_dim();
    return PLFunction(std::move(space), {}, LinearForm::zero(n));
}

Rational PLFunction::evaluate(const RVec& y) const {
    space_->require(y);
    return evaluate_unchecked(y);
}

Rational PLFunction::evaluate_unchecked(const RVec& y) const {
    if (y.size() != space_->ambient_dim()) throw InputError("PL function: argument arity mismatch");
    Rational v = linear_(y);
    for (const auto& t : terms_) v += t.coef * t.form(y).abs();
    return v;
}

Rational PLFunction::evaluate_unchecked(const IVec& y) const {
    if (y.size() != space_->ambient_dim()) throw InputError("PL function: argument arity mismatch");
    Rational v = linear_(y);
    for (const auto& t : terms_) v += t.coef * t.form(y).abs();
    return v;
}

PLFunction PLFunction::canonical() const {
    std::map<LinearForm, Rational> merged;
    for (const auto& t : terms_) {
        if (t.coef.is_zero()) continue;
        LinearForm r = space_->reduce(t.form);
        if (r.is_zero()) continue;
        // primitive integral form, scale folded into the coefficient
        IVec prim = primitive_integer(r.coefficients());
        std::size_t k = 0;
        while (prim[k] == 0) ++k;
        Rational scale = (r[k] / Rational(prim[k])).abs();
        merged[LinearForm(to_rational(prim)).sign_normalized()] += t.coef * scale;
    }
    std::vector<AbsTerm> terms;
    for (auto& [form, coef] : merged)
        if (!coef.is_zero()) terms.push_back({coef, form});
    return PLFunction(space_, std::move(terms), space_->reduce(linear_));
}

bool PLFunction::equals_on_space(const PLFunction& o) const {
    if (!(*space_ == *o.space_)) return false;
    PLFunction a = canonical(), b = o.canonical();
    return a.terms_ == b.terms_ && a.linear_ == b.linear_;
}

bool PLFunction::is_even() const { return space_->reduce(linear_).is_zero(); }

PLFunction PLFunction::operator-() const {
    PLFunction f = *this;
    for (auto& t : f.terms_) t.coef = -t.coef;
    f.linear_ = -f.linear_;
    return f;
}

PLFunction operator+(const PLFunction& a, const PLFunction& b) {
    if (!(*a.space_ == *b.space_)) throw InputError("sum of PL functions over different tori");
    std::vector<AbsTerm> terms = a.terms_;
    terms.insert(terms.end(), b.terms_.begin(), b.terms_.end());
    return PLFunction(a.space_, std::move(terms), a.linear_ + b.linear_);
}

PLFunction operator*(const Rational& s, const PLFunction& f) {
    if (s.sign() < 0) return (-s) * (-f);
    PLFunction g = f;
    for (auto& t : g.terms_) t.coef *= s;
    g.linear_ = s * g.linear_;
    return g;
}

// ---------------------------------------------------------------------------

void PairSpec::validate() const {
    if (!h_module.space() || !g_module.space()) throw InputError("pair spec: missing module");
    if (!(*h_module.space() == *g_module.space())) throw InputError("pair spec: h and g/h use different tori");
    if (v_module && !(*v_module->space() == *h_module.space()))
        throw InputError("pair spec: V uses a different torus");
}

Rational evaluate_pl(const PLFunction& f, const RVec& y) { return f.evaluate(y); }

Rational rho_plus(const WeightModule& m, const RVec& y) {
    m.space()->require(y);
    Rational s;
    for (const auto& w : m.weights()) {
        Rational v = w.form(y);
        if (v.sign() > 0) s += Rational(w.mult) * v;
    }
    return s;
}

PLFunction rho_function(const WeightModule& m) {
    std::vector<AbsTerm> terms;
    for (const auto& w : m.weights())
        if (!w.form.is_zero()) terms.push_back({Rational(w.mult, 2), w.form});
    return PLFunction(m.space(), std::move(terms), LinearForm::zero(m.space()->ambient_dim()));
}

PLFunction deficit(const PairSpec& spec) {
    spec.validate();
    PLFunction f = rho_function(spec.g_module) - rho_function(spec.h_module);
    if (spec.v_module) f = f + Rational(2) * rho_function(*spec.v_module);
    return f.canonical();
}

} // namespace temper
