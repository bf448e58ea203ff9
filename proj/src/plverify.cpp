#include "temper/plverify.hpp"

#include "temper/linalg.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <map>
#include <numeric>

namespace temper {

namespace {

constexpr std::size_t kWords = 4;
constexpr std::size_t kMaxForms = kWords * 64;

struct Bits {
    std::array<std::uint64_t, kWords> w{};

    void set(std::size_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
    bool test(std::size_t i) const { return (w[i >> 6] >> (i & 63)) & 1U; }
    friend Bits operator&(const Bits& a, const Bits& b) {
        Bits r;
        for (std::size_t k = 0; k < kWords; ++k) r.w[k] = a.w[k] & b.w[k];
        return r;
    }
    bool subset_of(const Bits& o) const {
        for (std::size_t k = 0; k < kWords; ++k)
            if (w[k] & ~o.w[k]) return false;
        return true;
    }
    int count() const {
        int c = 0;
        for (auto x : w) c += std::popcount(x);
        return c;
    }
};

struct Ray {
    IVec v;
    Bits zero;
    Bits pos;
};

std::int64_t idot(const IVec& a, const IVec& b) {
    __int128 s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<__int128>(a[i]) * b[i];
    return checked::narrow(s);
}

IVec integral_form(const LinearForm& f) { return primitive_integer(f.coefficients()); }

/// Result of removing the lineality space of an arrangement from a slice.
struct Essential {
    SpacePtr space;            // slice intersected with the orthogonal complement of the lineality
    std::vector<IVec> lineality;
};

Essential essentialize(const SpacePtr& space, const std::vector<LinearForm>& hyperplanes) {
    const std::size_t n = space->ambient_dim();
    std::vector<RVec> rows;
    for (const auto& c : space->constraints()) rows.push_back(c.coefficients());
    for (const auto& h : hyperplanes) rows.push_back(h.coefficients());
    Essential e;
    if (rows.empty()) {
        for (std::size_t i = 0; i < n; ++i) e.lineality.push_back(integral_form(LinearForm::unit(n, i)));
    } else {
        for (const auto& v : nullspace(RMatrix::from_rows(rows, n))) e.lineality.push_back(primitive_integer(v));
    }
    if (e.lineality.empty()) {
        e.space = space;
        return e;
    }
    std::vector<LinearForm> cons = space->constraints();
    for (const auto& l : e.lineality) cons.emplace_back(to_rational(l));
    e.space = make_space(n, std::move(cons), space->labels());
    return e;
}

using LeafFn = std::function<void(const std::vector<std::int8_t>& signs, const std::vector<Ray>& rays)>;

/// Depth-first chamber enumeration on a slice where the arrangement is
/// essential. `domain` forms are half-spaces (only their positive side is
/// kept); `arrangement` forms are split on both sides.
class ArrangementWalker {
public:
    ArrangementWalker(SpacePtr space, const std::vector<LinearForm>& domain,
                      const std::vector<LinearForm>& arrangement, bool prune_antipodal)
        : space_(std::move(space)), prune_(prune_antipodal) {
        n_ = space_->ambient_dim();
        d_ = space_->dim();
        for (const auto& g : domain) {
            LinearForm r = space_->reduce(g);
            if (r.is_zero()) continue;
            forms_.push_back(integral_form(r));
            rforms_.push_back(r);
            is_domain_.push_back(true);
        }
        num_domain_ = forms_.size();
        for (const auto& h : arrangement) {
            LinearForm r = space_->reduce(h);
            if (r.is_zero()) throw DomainError("hyperplane vanishes on the essential slice");
            forms_.push_back(integral_form(r));
            rforms_.push_back(r);
            is_domain_.push_back(false);
        }
        num_arrangement_ = arrangement.size();
        if (forms_.size() > kMaxForms)
            throw DomainError("arrangement too large: " + std::to_string(forms_.size()) + " forms (limit " +
                              std::to_string(kMaxForms) + ")");
    }

    void run(const LeafFn& leaf) {
        leaf_ = &leaf;
        if (d_ == 0) {
            std::vector<std::int8_t> signs(num_arrangement_, 1);
            leaf(signs, {});
            return;
        }
        choose_basis();
        build_masks();
        std::vector<IVec> dual = dual_rays();

        std::vector<std::size_t> free_slots;
        std::vector<std::int8_t> base_sign(d_, 1);
        for (std::size_t j = 0; j < d_; ++j) {
            bool fixed = is_domain_[basis_[j]] || (prune_ && num_domain_ == 0 && j == 0);
            if (!fixed) free_slots.push_back(j);
        }
        const std::uint64_t combos = std::uint64_t{1} << free_slots.size();
        for (std::uint64_t mask = 0; mask < combos; ++mask) {
            std::vector<std::int8_t> s = base_sign;
            for (std::size_t k = 0; k < free_slots.size(); ++k)
                if (mask >> k & 1U) s[free_slots[k]] = -1;
            std::vector<Ray> cone;
            cone.reserve(d_);
            for (std::size_t j = 0; j < d_; ++j) {
                IVec v = dual[j];
                if (s[j] < 0)
                    for (auto& x : v) x = -x;
                cone.push_back(make_ray(std::move(v)));
            }
            descend(std::move(cone), 0);
        }
    }

private:
    Ray make_ray(IVec v) const {
        Ray r;
        for (std::size_t i = 0; i < forms_.size(); ++i) {
            std::int64_t x = idot(forms_[i], v);
            if (x == 0) r.zero.set(i);
            else if (x > 0) r.pos.set(i);
        }
        r.v = std::move(v);
        return r;
    }

    void choose_basis() {
        Span span(n_);
        std::vector<bool> in_basis(forms_.size(), false);
        for (std::size_t i = 0; i < forms_.size() && basis_.size() < d_; ++i)
            if (span.add(rforms_[i].coefficients())) {
                basis_.push_back(i);
                in_basis[i] = true;
            }
        if (basis_.size() < d_) throw DomainError("arrangement is not essential on the slice");
        for (std::size_t i = 0; i < forms_.size(); ++i)
            if (!in_basis[i]) order_.push_back(i);
    }

    void build_masks() {
        Bits m;
        for (auto b : basis_) m.set(b);
        masks_.push_back(m);
        for (auto j : order_) {
            m.set(j);
            masks_.push_back(m);
        }
    }

    // Vectors v_j in the slice with basis_i(v_k) = delta_ik.
    std::vector<IVec> dual_rays() const {
        const auto& B = space_->basis();
        RMatrix M(d_, d_);
        for (std::size_t i = 0; i < d_; ++i)
            for (std::size_t j = 0; j < d_; ++j) M(i, j) = rforms_[basis_[i]](B[j]);
        RMatrix inv = inverse(M);
        std::vector<IVec> out;
        for (std::size_t j = 0; j < d_; ++j) {
            RVec v(n_);
            for (std::size_t k = 0; k < d_; ++k) {
                if (inv(k, j).is_zero()) continue;
                for (std::size_t c = 0; c < n_; ++c)
                    if (B[k][c] != 0) v[c] += inv(k, j) * Rational(B[k][c]);
            }
            out.push_back(primitive_integer(v));
        }
        return out;
    }

    bool adjacent(const std::vector<Ray>& cone, std::size_t a, std::size_t b, const Bits& mask) const {
        Bits z = cone[a].zero & cone[b].zero & mask;
        if (z.count() + 2 < static_cast<int>(d_)) return false;
        for (std::size_t c = 0; c < cone.size(); ++c) {
            if (c == a || c == b) continue;
            if (z.subset_of(cone[c].zero)) return false;
        }
        return true;
    }

    void descend(std::vector<Ray> cone, std::size_t k) {
        if (k == order_.size()) {
            emit(cone);
            return;
        }
        const std::size_t j = order_[k];
        std::vector<std::size_t> pos, neg, zero;
        for (std::size_t r = 0; r < cone.size(); ++r) {
            if (cone[r].zero.test(j)) zero.push_back(r);
            else if (cone[r].pos.test(j)) pos.push_back(r);
            else neg.push_back(r);
        }
        if (neg.empty()) {
            descend(std::move(cone), k + 1);
            return;
        }
        if (pos.empty()) {
            if (!is_domain_[j]) descend(std::move(cone), k + 1);
            return;
        }
        const Bits& mask = masks_[k];
        const IVec& h = forms_[j];
        std::vector<Ray> fresh;
        for (auto a : pos) {
            const std::int64_t ha = idot(h, cone[a].v);
            for (auto b : neg) {
                if (!adjacent(cone, a, b, mask)) continue;
                const std::int64_t hb = idot(h, cone[b].v); // < 0
                IVec w(n_);
                for (std::size_t c = 0; c < n_; ++c)
                    w[c] = checked::narrow(static_cast<__int128>(ha) * cone[b].v[c] -
                                           static_cast<__int128>(hb) * cone[a].v[c]);
                make_primitive(w);
                fresh.push_back(make_ray(std::move(w)));
            }
        }
        std::vector<Ray> plus, minus;
        plus.reserve(pos.size() + zero.size() + fresh.size());
        for (auto r : pos) plus.push_back(cone[r]);
        for (auto r : zero) plus.push_back(cone[r]);
        plus.insert(plus.end(), fresh.begin(), fresh.end());
        if (!is_domain_[j]) {
            minus.reserve(neg.size() + zero.size() + fresh.size());
            for (auto r : neg) minus.push_back(std::move(cone[r]));
            for (auto r : zero) minus.push_back(std::move(cone[r]));
            minus.insert(minus.end(), std::make_move_iterator(fresh.begin()), std::make_move_iterator(fresh.end()));
        }
        cone.clear();
        cone.shrink_to_fit();
        descend(std::move(plus), k + 1);
        if (!minus.empty()) descend(std::move(minus), k + 1);
    }

    void emit(const std::vector<Ray>& cone) {
        std::vector<std::int8_t> signs(num_arrangement_, -1);
        for (std::size_t a = 0; a < num_arrangement_; ++a) {
            const std::size_t i = num_domain_ + a;
            for (const auto& r : cone)
                if (r.pos.test(i)) {
                    signs[a] = 1;
                    break;
                }
        }
        (*leaf_)(signs, cone);
    }

    SpacePtr space_;
    bool prune_;
    std::size_t n_ = 0, d_ = 0;
    std::vector<IVec> forms_;
    std::vector<LinearForm> rforms_;
    std::vector<bool> is_domain_;
    std::size_t num_domain_ = 0, num_arrangement_ = 0;
    std::vector<std::size_t> basis_, order_;
    std::vector<Bits> masks_;
    const LeafFn* leaf_ = nullptr;
};

RVec unit_max_norm(const IVec& v) {
    std::int64_t m = 0;
    for (auto x : v) m = std::max(m, x < 0 ? -x : x);
    RVec out;
    out.reserve(v.size());
    for (auto x : v) out.push_back(m == 0 ? Rational(0) : Rational(x, m));
    return out;
}

std::vector<LinearForm> domain_forms(const std::vector<std::vector<std::size_t>>& orbits, std::size_t n) {
    std::vector<LinearForm> out;
    for (const auto& orbit : orbits)
        for (std::size_t k = 0; k + 1 < orbit.size(); ++k) out.push_back(LinearForm::difference(n, orbit[k + 1], orbit[k]));
    return out;
}

/// Keeps the most negative candidate, ties broken by the smaller direction.
struct WitnessTracker {
    std::optional<Rational> best_value;
    RVec best_direction;

    void offer(const Rational& value, const RVec& direction) {
        if (value.sign() >= 0) return;
        if (!best_value || value < *best_value || (value == *best_value && direction < best_direction)) {
            best_value = value;
            best_direction = direction;
        }
    }
};

} // namespace

std::vector<LinearForm> distinct_hyperplanes(const PLFunction& f) {
    std::vector<LinearForm> out;
    for (const auto& t : f.abs_terms()) {
        LinearForm r = f.space()->reduce(t.form);
        if (r.is_zero()) continue;
        out.push_back(r.sign_normalized());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Chamber> enumerate_chambers(const std::vector<LinearForm>& hyperplanes, const SpacePtr& space,
                                        const ChamberOptions& options) {
    std::vector<LinearForm> reduced;
    for (const auto& h : hyperplanes) {
        LinearForm r = space->reduce(h);
        if (r.is_zero()) throw InputError("enumerate_chambers: hyperplane vanishes on the slice");
        reduced.push_back(r);
    }
    Essential e = essentialize(space, reduced);
    ArrangementWalker walker(e.space, options.domain, reduced, options.prune_antipodal);
    std::vector<Chamber> out;
    walker.run([&](const std::vector<std::int8_t>& signs, const std::vector<Ray>& rays) {
        Chamber c;
        c.signs = signs;
        for (const auto& r : rays) c.rays.push_back(r.v);
        c.linear_form = LinearForm::zero(space->ambient_dim());
        out.push_back(std::move(c));
    });
    return out;
}

std::vector<std::vector<std::size_t>> coordinate_symmetry_orbits(const PLFunction& f) {
    const SpacePtr& space = f.space();
    const std::size_t n = space->ambient_dim();
    const PLFunction g = f.canonical();

    auto swap_form = [](const LinearForm& a, std::size_t i, std::size_t j) {
        RVec c = a.coefficients();
        std::swap(c[i], c[j]);
        return LinearForm(std::move(c));
    };

    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        return parent[x] == x ? x : parent[x] = find(parent[x]);
    };

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (find(i) == find(j)) continue;
            bool slice_ok = std::all_of(space->constraints().begin(), space->constraints().end(),
                                        [&](const LinearForm& c) { return space->vanishes(swap_form(c, i, j)); });
            if (!slice_ok) continue;
            std::vector<AbsTerm> terms;
            for (const auto& t : g.abs_terms()) terms.push_back({t.coef, swap_form(t.form, i, j)});
            PLFunction h(space, std::move(terms), swap_form(g.linear_term(), i, j));
            if (h.equals_on_space(g)) parent[find(i)] = find(j);
        }

    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i) groups[find(i)].push_back(i);
    std::vector<std::vector<std::size_t>> out;
    for (auto& [root, members] : groups)
        if (members.size() >= 2) out.push_back(members);
    std::sort(out.begin(), out.end());
    return out;
}

VerifyResult is_nonnegative(const PLFunction& f, const VerifyOptions& options) {
    const PLFunction g = f.canonical();
    const SpacePtr& space = g.space();
    const std::size_t n = space->ambient_dim();

    std::vector<LinearForm> hyperplanes;
    std::vector<Rational> coefs;
    for (const auto& t : g.abs_terms()) {
        hyperplanes.push_back(t.form);
        coefs.push_back(t.coef);
    }

    VerifyResult result;
    result.stats.hyperplanes = hyperplanes.size();

    Essential e = essentialize(space, hyperplanes);
    result.stats.dim = e.space->dim();

    // Along the lineality only the linear term survives.
    {
        WitnessTracker tracker;
        for (const auto& l : e.lineality) {
            Rational v = g.linear_term()(l);
            if (v.is_zero()) continue;
            IVec dir = l;
            if (v.sign() > 0)
                for (auto& x : dir) x = -x;
            RVec unit = unit_max_norm(dir);
            tracker.offer(g.evaluate_unchecked(unit), unit);
        }
        if (tracker.best_value) {
            result.evidence = Witness{g, tracker.best_direction, *tracker.best_value};
            return result;
        }
    }

    std::vector<std::vector<std::size_t>> orbits;
    if (options.use_symmetry) orbits = coordinate_symmetry_orbits(g);
    result.stats.symmetry_orbits = orbits.size();
    const bool prune = options.prune_antipodal && !options.use_symmetry && g.is_even();

    ArrangementWalker walker(e.space, domain_forms(orbits, n), hyperplanes, prune);

    NonnegCertificate cert;
    std::map<IVec, std::size_t> ray_index;
    WitnessTracker tracker;
    VerifyStats& stats = result.stats;

    walker.run([&](const std::vector<std::int8_t>& signs, const std::vector<Ray>& rays) {
        ++stats.chambers;
        stats.ray_incidences += rays.size();
        LinearForm lf = g.linear_term();
        for (std::size_t k = 0; k < hyperplanes.size(); ++k) lf += (coefs[k] * Rational(signs[k])) * hyperplanes[k];
        lf = space->reduce(lf);
        NonnegCertificate::Cell cell;
        for (const auto& r : rays) {
            Rational v = lf(r.v);
            if (v.sign() < 0) {
                RVec unit = unit_max_norm(r.v);
                tracker.offer(g.evaluate_unchecked(unit), unit);
            }
            if (options.keep_certificate) {
                auto [it, inserted] = ray_index.try_emplace(r.v, cert.rays.size());
                if (inserted) {
                    cert.rays.push_back(r.v);
                    cert.ray_values.push_back(g.evaluate_unchecked(r.v));
                }
                cell.rays.push_back(it->second);
            }
        }
        if (options.keep_certificate) {
            cell.signs = signs;
            cell.linear_form = std::move(lf);
            cert.chambers.push_back(std::move(cell));
        }
    });

    if (tracker.best_value) {
        result.evidence = Witness{g, tracker.best_direction, *tracker.best_value};
        return result;
    }
    stats.unique_rays = cert.rays.size();
    cert.function = g;
    cert.hyperplanes = std::move(hyperplanes);
    cert.orbits = std::move(orbits);
    cert.lineality = std::move(e.lineality);
    cert.antipodal = prune;
    result.evidence = std::move(cert);
    return result;
}

std::optional<Witness> grid_oracle(const PLFunction& f, int resolution) {
    if (resolution < 1) throw InputError("grid_oracle: resolution must be at least 1");
    const SpacePtr& space = f.space();
    const std::size_t n = space->ambient_dim();
    if (n == 0) return std::nullopt;
    const PLFunction g = f.canonical();
    IVec y(n, -resolution);
    WitnessTracker tracker;
    while (true) {
        bool on_sphere = std::any_of(y.begin(), y.end(), [&](std::int64_t x) { return x == resolution || x == -resolution; });
        if (on_sphere && space->contains(y)) {
            Rational v = g.evaluate_unchecked(y);
            if (v.sign() < 0) {
                RVec unit;
                for (auto x : y) unit.emplace_back(x, resolution);
                tracker.offer(v / Rational(resolution), unit);
            }
        }
        std::size_t i = 0;
        while (i < n && y[i] == resolution) y[i++] = -resolution;
        if (i == n) break;
        ++y[i];
    }
    if (!tracker.best_value) return std::nullopt;
    return Witness{g, tracker.best_direction, *tracker.best_value};
}

} // namespace temper
