#include "doctest.h"
#include "temper/generators.hpp"
#include "temper/plverify.hpp"

#include <random>

using namespace temper;

namespace {

PLFunction random_pl(std::mt19937_64& rng, std::size_t max_dim, bool with_linear) {
    std::uniform_int_distribution<std::size_t> dim(1, max_dim);
    std::uniform_int_distribution<int> terms(1, 6), c(-3, 3), bias(-1, 3);
    std::size_t n = dim(rng);
    auto s = make_space(n);
    std::vector<AbsTerm> ts;
    int k = terms(rng);
    for (int i = 0; i < k; ++i) {
        RVec f(n);
        for (auto& x : f) x = c(rng);
        ts.push_back({bias(rng), LinearForm(f)});
    }
    RVec l(n);
    if (with_linear)
        for (auto& x : l) x = c(rng);
    return PLFunction(s, ts, LinearForm(l));
}

RVec interior_point(const Chamber& ch, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> w(1, 9);
    RVec p(ch.rays.front().size());
    for (const auto& r : ch.rays) {
        Rational a = w(rng);
        for (std::size_t i = 0; i < p.size(); ++i) p[i] += a * Rational(r[i]);
    }
    return p;
}

} // namespace

TEST_CASE("distinct hyperplanes merge signs and drop vanishing forms") {
    auto s = make_space(1);
    PLFunction f(s, {{1, LinearForm{1}}, {1, LinearForm{-1}}}, LinearForm::zero(1));
    CHECK(distinct_hyperplanes(f).size() == 1);
    auto t = make_space(3);
    PLFunction g(t, {{1, LinearForm{1, -1, 0}}, {1, LinearForm{0, 1, -1}}, {1, LinearForm{1, 0, -1}}},
                 LinearForm::zero(3));
    CHECK(distinct_hyperplanes(g).size() == 3);
    auto slice = make_space(2, {LinearForm{1, -1}});
    PLFunction h(slice, {{1, LinearForm{1, -1}}, {1, LinearForm{1, 0}}}, LinearForm::zero(2));
    CHECK(distinct_hyperplanes(h).size() == 1);
}

TEST_CASE("chamber counts") {
    auto line = make_space(1);
    auto one = enumerate_chambers({LinearForm{1}}, line);
    CHECK(one.size() == 2);
    auto s = make_space(3, {LinearForm{1, 1, 1}});
    std::vector<LinearForm> braid{LinearForm{1, -1, 0}, LinearForm{0, 1, -1}, LinearForm{1, 0, -1}};
    CHECK(enumerate_chambers(braid, s).size() == 6);
    ChamberOptions half;
    half.prune_antipodal = true;
    CHECK(enumerate_chambers(braid, s, half).size() == 3);
    auto s4 = make_space(4, {LinearForm{1, 1, 1, 1}});
    std::vector<LinearForm> braid4;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) braid4.push_back(LinearForm::difference(4, i, j));
    CHECK(enumerate_chambers(braid4, s4).size() == 24);
    // generic lines through the origin of the plane: 2k chambers
    auto plane = make_space(2);
    std::vector<LinearForm> lines{LinearForm{1, 0}, LinearForm{0, 1}, LinearForm{1, 1}, LinearForm{1, -2}};
    CHECK(enumerate_chambers(lines, plane).size() == 8);
}

TEST_CASE("small examples decide correctly") {
    auto plane = make_space(2);
    PLFunction tri(plane, {{1, LinearForm{1, 0}}, {1, LinearForm{0, 1}}, {-1, LinearForm{1, 1}}}, LinearForm::zero(2));
    CHECK(is_nonnegative(tri).nonnegative());
    PLFunction yx(plane, {{1, LinearForm{0, 1}}, {-1, LinearForm{1, 0}}}, LinearForm::zero(2));
    auto r = is_nonnegative(yx);
    REQUIRE_FALSE(r.nonnegative());
    CHECK(r.witness().value == Rational(-1));
    CHECK((r.witness().direction == RVec{1, 0} || r.witness().direction == RVec{-1, 0}));
    auto g = grid_oracle(yx, 1);
    REQUIRE(g);
    CHECK(g->value == Rational(-1));
    PLFunction absx(plane, {{1, LinearForm{1, 0}}}, LinearForm::zero(2));
    CHECK_FALSE(grid_oracle(absx, 5));
    // a linear function is never nonnegative unless it vanishes
    PLFunction lin(plane, {}, LinearForm{1, 0});
    CHECK_FALSE(is_nonnegative(lin).nonnegative());
}

TEST_CASE("zero-dimensional slice is trivially nonnegative") {
    auto pt = make_space(2, {LinearForm{1, 0}, LinearForm{0, 1}});
    PLFunction f(pt, {{-1, LinearForm{1, 1}}}, LinearForm::zero(2));
    auto r = is_nonnegative(f);
    CHECK(r.nonnegative());
    CHECK(recheck(r.certificate()).ok);
}

TEST_CASE("table-1 H1 at (4,2) has a witness") {
    auto spec = build_sl_block(find_preset("table1/H1", 2).pattern({4, 2}));
    auto r = is_nonnegative(deficit(spec));
    REQUIRE_FALSE(r.nonnegative());
    CHECK(r.witness().value < Rational(0));
    CHECK(deficit(spec).evaluate(r.witness().direction) == r.witness().value);
}

TEST_CASE("certificates against the grid oracle and planted violations") {
    std::mt19937_64 rng(2024);
    int certs = 0, witnesses = 0;
    for (int trial = 0; trial < 150; ++trial) {
        PLFunction f = random_pl(rng, 3, trial % 2 == 0);
        auto r = is_nonnegative(f);
        if (r.nonnegative()) {
            ++certs;
            CHECK_FALSE(grid_oracle(f, 6));
            CHECK(recheck(r.certificate()).ok);
        } else {
            ++witnesses;
            CHECK(f.evaluate(r.witness().direction) == r.witness().value);
            CHECK(r.witness().value < Rational(0));
            CHECK(recheck(r.witness()).ok);
        }
    }
    CHECK(certs > 10);
    CHECK(witnesses > 10);

    // plant a negative value on a chosen integral direction
    std::uniform_int_distribution<int> d(-3, 3);
    for (int trial = 0; trial < 100; ++trial) {
        PLFunction f = random_pl(rng, 3, false);
        std::size_t n = f.space()->ambient_dim();
        IVec dir(n);
        do
            for (auto& x : dir) x = d(rng);
        while (std::all_of(dir.begin(), dir.end(), [](auto x) { return x == 0; }));
        RVec dv = to_rational(dir);
        std::size_t k = 0;
        while (dir[k] == 0) ++k;
        LinearForm e = LinearForm::unit(n, k);
        Rational need = f.evaluate(dv) / e(dv).abs() + Rational(1);
        auto terms = f.abs_terms();
        terms.push_back({-need, e});
        PLFunction g(f.space(), terms, f.linear_term());
        REQUIRE(g.evaluate(dv) < Rational(0));
        auto r = is_nonnegative(g);
        REQUIRE_FALSE(r.nonnegative());
        CHECK(g.evaluate(r.witness().direction) < Rational(0));
        CHECK(grid_oracle(g, 6));
    }
}

TEST_CASE("pruning and symmetry do not change verdicts") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        PLFunction f = random_pl(rng, 4, false);
        VerifyOptions pruned;
        pruned.prune_antipodal = true;
        VerifyOptions sym;
        sym.use_symmetry = true;
        bool base = is_nonnegative(f).nonnegative();
        auto p = is_nonnegative(f, pruned);
        CHECK(p.nonnegative() == base);
        CHECK(is_nonnegative(f, sym).nonnegative() == base);
        if (p.nonnegative()) {
            CHECK(p.certificate().antipodal);
            CHECK(recheck(p.certificate()).ok);
        }
    }
    for (const auto& preset : table2_presets()) {
        for (auto sizes : std::vector<std::vector<std::size_t>>{{1, 1, 1}, {2, 1, 2}, {1, 3, 1}, {3, 1, 2}}) {
            auto f = deficit(build_sl_block(preset.pattern(sizes)));
            VerifyOptions sym;
            sym.use_symmetry = true;
            auto a = is_nonnegative(f);
            auto b = is_nonnegative(f, sym);
            CHECK(a.nonnegative() == b.nonnegative());
            if (b.nonnegative()) CHECK(recheck(b.certificate()).ok);
        }
    }
}

TEST_CASE("f is linear on every chamber and rays bound the minimum") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        PLFunction f = random_pl(rng, 3, true);
        auto hs = distinct_hyperplanes(f);
        auto chambers = enumerate_chambers(hs, f.space());
        for (const auto& ch : chambers) {
            for (int k = 0; k < 10; ++k) {
                RVec p = interior_point(ch, rng);
                for (std::size_t h = 0; h < hs.size(); ++h) CHECK(hs[h](p).sign() == ch.signs[h]);
            }
        }
        // the certificate's chamber forms agree with f
        auto r = is_nonnegative(f);
        if (!r.nonnegative()) continue;
        const auto& cert = r.certificate();
        for (const auto& cell : cert.chambers) {
            Chamber ch{cell.signs, {}, cell.linear_form};
            for (auto i : cell.rays) ch.rays.push_back(cert.rays[i]);
            RVec p = interior_point(ch, rng);
            CHECK(f.evaluate(p) == cell.linear_form(p));
        }
    }
}

TEST_CASE("recheck catches tampering") {
    auto spec = build_sl_block(find_preset("table2/H11", 3).pattern({2, 2, 2}));
    auto r = is_nonnegative(deficit(spec));
    REQUIRE(r.nonnegative());
    auto cert = r.certificate();
    REQUIRE(recheck(cert).ok);
    for (std::size_t i = 0; i < cert.ray_values.size(); i += 7) {
        auto bad = cert;
        bad.ray_values[i] += Rational(1);
        CHECK_FALSE(recheck(bad).ok);
    }
    auto bad = cert;
    bad.function = -bad.function;
    CHECK_FALSE(recheck(bad).ok);
    auto fewer = cert;
    fewer.chambers.pop_back();
    CHECK_FALSE(recheck(fewer).ok);

    auto w = is_nonnegative(deficit(build_sl_block(find_preset("table2/H11", 3).pattern({3, 1, 1})))).witness();
    CHECK(recheck(w).ok);
    w.value = w.value + Rational(1, 2);
    CHECK_FALSE(recheck(w).ok);
}

TEST_CASE("witness choice is deterministic") {
    auto spec = build_sl_block(find_preset("table1/H1", 2).pattern({5, 1}));
    auto a = is_nonnegative(deficit(spec));
    auto b = is_nonnegative(deficit(spec));
    CHECK(a.witness().direction == b.witness().direction);
    CHECK(a.witness().value == b.witness().value);
}
