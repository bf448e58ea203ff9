// Replays certificates and witnesses through the core model alone; nothing
// here touches the chamber enumeration.

#include "temper/plverify.hpp"

#include "temper/linalg.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace temper {

namespace {

LinearForm swapped(const LinearForm& a, std::size_t i, std::size_t j) {
    RVec c = a.coefficients();
    std::swap(c[i], c[j]);
    return LinearForm(std::move(c));
}

std::size_t rank_of(const std::vector<IVec>& vs, std::size_t n) {
    std::vector<RVec> rows;
    for (const auto& v : vs) rows.push_back(to_rational(v));
    return rows.empty() ? 0 : rank(rows, n);
}

// The listed cells must be closed under crossing facets: for every facet of a
// cell that lies on arrangement hyperplanes (and not on a wall of the
// symmetry domain), the cell on the other side must be listed too, possibly as
// its antipode. The chamber graph of a convex region is connected, so this
// shows that nothing is missing.
void check_coverage(const NonnegCertificate& cert, const std::function<void(std::string)>& fail) {
    const SpacePtr& space = cert.function.space();
    const std::size_t n = space->ambient_dim();
    const std::size_t d = space->dim() - rank_of(cert.lineality, n);
    if (cert.chambers.empty()) {
        fail("certificate lists no chambers");
        return;
    }
    std::vector<LinearForm> walls;
    for (const auto& orbit : cert.orbits)
        for (std::size_t k = 0; k + 1 < orbit.size(); ++k)
            if (orbit[k] < n && orbit[k + 1] < n) walls.push_back(LinearForm::difference(n, orbit[k + 1], orbit[k]));
    // walls that vanish on the whole essential slice bound nothing
    std::erase_if(walls, [&](const LinearForm& g) {
        return std::all_of(cert.rays.begin(), cert.rays.end(), [&](const IVec& r) { return g(r).is_zero(); });
    });

    std::set<std::vector<std::int8_t>> listed;
    for (const auto& cell : cert.chambers) listed.insert(cell.signs);
    auto present = [&](std::vector<std::int8_t> s) {
        if (listed.count(s)) return true;
        if (!cert.antipodal) return false;
        for (auto& x : s) x = static_cast<std::int8_t>(-x);
        return listed.count(s) > 0;
    };

    for (std::size_t c = 0; c < cert.chambers.size(); ++c) {
        const auto& cell = cert.chambers[c];
        if (cell.signs.size() != cert.hyperplanes.size()) continue;
        std::vector<IVec> rays;
        for (auto idx : cell.rays)
            if (idx < cert.rays.size()) rays.push_back(cert.rays[idx]);
        if (rank_of(rays, n) != d) {
            fail("chamber " + std::to_string(c) + " is not full-dimensional");
            continue;
        }
        if (d == 0) continue;
        std::set<std::vector<std::size_t>> seen;
        for (std::size_t h = 0; h < cert.hyperplanes.size(); ++h) {
            std::vector<std::size_t> tight;
            std::vector<IVec> tight_rays;
            for (std::size_t r = 0; r < rays.size(); ++r)
                if (cert.hyperplanes[h](rays[r]).is_zero()) {
                    tight.push_back(r);
                    tight_rays.push_back(rays[r]);
                }
            if (tight_rays.size() + 1 < d || !seen.insert(tight).second) continue;
            if (rank_of(tight_rays, n) + 1 != d) continue;
            auto on_facet = [&](const LinearForm& g) {
                return std::all_of(tight_rays.begin(), tight_rays.end(), [&](const IVec& r) { return g(r).is_zero(); });
            };
            if (std::any_of(walls.begin(), walls.end(), on_facet)) continue;
            std::vector<std::int8_t> across = cell.signs;
            for (std::size_t k = 0; k < cert.hyperplanes.size(); ++k)
                if (on_facet(cert.hyperplanes[k])) across[k] = static_cast<std::int8_t>(-across[k]);
            if (!present(across))
                fail("chamber " + std::to_string(c) + ": the neighbour across hyperplane " + std::to_string(h) +
                     " is missing");
        }
    }
}

} // namespace

RecheckReport recheck(const NonnegCertificate& cert) {
    RecheckReport rep;
    auto fail = [&](std::string msg) {
        rep.ok = false;
        if (rep.problems.size() < 20) rep.problems.push_back(std::move(msg));
    };
    const PLFunction& f = cert.function;
    const SpacePtr& space = f.space();
    const std::size_t n = space->ambient_dim();

    if (cert.rays.size() != cert.ray_values.size()) fail("ray and value counts differ");
    for (std::size_t i = 0; i < cert.rays.size() && i < cert.ray_values.size(); ++i) {
        const IVec& r = cert.rays[i];
        if (r.size() != n || !space->contains(r)) {
            fail("ray " + std::to_string(i) + " is not in the torus slice");
            continue;
        }
        if (std::all_of(r.begin(), r.end(), [](std::int64_t x) { return x == 0; }))
            fail("ray " + std::to_string(i) + " is zero");
        Rational v = f.evaluate_unchecked(r);
        if (v != cert.ray_values[i])
            fail("ray " + std::to_string(i) + ": recorded value " + cert.ray_values[i].str() + ", recomputed " + v.str());
        if (v.sign() < 0) fail("ray " + std::to_string(i) + " has negative value " + v.str());
    }

    for (std::size_t c = 0; c < cert.chambers.size(); ++c) {
        const auto& cell = cert.chambers[c];
        if (cell.signs.size() != cert.hyperplanes.size()) {
            fail("chamber " + std::to_string(c) + ": sign vector length mismatch");
            continue;
        }
        for (auto idx : cell.rays) {
            if (idx >= cert.rays.size()) {
                fail("chamber " + std::to_string(c) + ": ray index out of range");
                continue;
            }
            const IVec& r = cert.rays[idx];
            for (std::size_t h = 0; h < cert.hyperplanes.size(); ++h) {
                int s = cert.hyperplanes[h](r).sign();
                if (s != 0 && s != cell.signs[h])
                    fail("chamber " + std::to_string(c) + ": ray " + std::to_string(idx) + " violates the sign of hyperplane " +
                         std::to_string(h));
            }
            if (cell.linear_form.arity() == n && cell.linear_form(r) != f.evaluate_unchecked(r))
                fail("chamber " + std::to_string(c) + ": linear form disagrees with f at ray " + std::to_string(idx));
        }
    }

    for (const auto& l : cert.lineality) {
        if (l.size() != n || !space->contains(l)) {
            fail("lineality vector outside the slice");
            continue;
        }
        for (const auto& t : f.abs_terms())
            if (!t.form(l).is_zero()) fail("lineality vector is not in the kernel of every abs term");
        if (!f.linear_term()(l).is_zero()) fail("linear term does not vanish on the lineality");
    }

    if (rep.ok) check_coverage(cert, fail);

    const PLFunction g = f.canonical();
    if (cert.antipodal && !g.is_even()) fail("antipodal pruning claimed for a function that is not even");
    for (const auto& orbit : cert.orbits)
        for (std::size_t k = 0; k + 1 < orbit.size(); ++k) {
            std::size_t i = orbit[k], j = orbit[k + 1];
            if (i >= n || j >= n) {
                fail("orbit index out of range");
                continue;
            }
            for (const auto& c : space->constraints())
                if (!space->vanishes(swapped(c, i, j))) fail("slice is not invariant under a claimed symmetry");
            std::vector<AbsTerm> terms;
            for (const auto& t : g.abs_terms()) terms.push_back({t.coef, swapped(t.form, i, j)});
            PLFunction h(space, std::move(terms), swapped(g.linear_term(), i, j));
            if (!h.equals_on_space(g))
                fail("f is not invariant under the transposition (" + std::to_string(i) + " " + std::to_string(j) + ")");
        }
    return rep;
}

RecheckReport recheck(const Witness& w) {
    RecheckReport rep;
    const SpacePtr& space = w.function.space();
    if (w.direction.size() != space->ambient_dim() || !space->contains(w.direction)) {
        rep.ok = false;
        rep.problems.push_back("witness direction is not in the torus slice");
        return rep;
    }
    Rational v = w.function.evaluate(w.direction);
    if (v != w.value) {
        rep.ok = false;
        rep.problems.push_back("recorded value " + w.value.str() + ", recomputed " + v.str());
    }
    if (v.sign() >= 0) {
        rep.ok = false;
        rep.problems.push_back("witness value is not negative");
    }
    return rep;
}

} // namespace temper
