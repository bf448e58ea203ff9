// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "temper/check.hpp"
#include "temper/cli.hpp"
#include "temper/serialize.hpp"
#include "temper/volume.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <unistd.h>

using namespace temper;
namespace fs = std::filesystem;

namespace {

// pinned limits
constexpr double kTable1Seconds = 60;
constexpr double kTable2Seconds = 600;
constexpr double kDecaySeconds = 120;
constexpr double kSlopeTolerance = 0.1;
constexpr std::uint64_t kDecaySamples = 100000;
constexpr int kOracleFunctions = 500;
constexpr int kOracleResolution = 12;
constexpr int kLeviPoints = 1000;
constexpr std::size_t kTranslateTrials = 100;
constexpr std::uint64_t kTranslateSamples = 20000;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool pass = true;
    std::string detail;
};

// tempered verdicts collected for the round trip
std::vector<std::pair<std::string, Verdict>> g_tempered;

void keep_tempered(const ScanReport& r) {
    for (const auto& pt : r.points)
        if (pt.verdict && pt.verdict->tempered) {
            std::string label = r.family;
            for (auto x : pt.params) label += "_" + std::to_string(x);
            g_tempered.emplace_back(label, *pt.verdict);
        }
}

ScanOptions keeping_options() {
    ScanOptions o;
    o.keep_verdicts = true;
    o.check.keep_certificate = true;
    return o;
}

std::string params_text(const std::vector<std::size_t>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

// scans every family in `names`, keeping tempered verdicts
Outcome scan_families_outcome(const std::vector<std::string>& names, const ScanRange& range, std::size_t expected_cases,
                              double limit_seconds) {
    Outcome o;
    auto t0 = Clock::now();
    std::size_t cases = 0, mismatches = 0;
    std::string bad;
    for (const auto& name : names) {
        ScanReport r = scan_family(name, range, keeping_options());
        cases += r.points.size();
        mismatches += r.mismatches.size();
        for (auto i : r.mismatches) {
            const auto& pt = r.points[i];
            bad += " " + name + params_text(pt.params) + (pt.error.empty() ? "" : "[" + pt.error + "]");
        }
        keep_tempered(r);
    }
    double secs = seconds_since(t0);
    std::ostringstream d;
    d << cases << " cases, " << mismatches << " mismatches, " << std::fixed;
    d.precision(1);
    d << secs << " s";
    if (limit_seconds > 0) d << " (limit " << limit_seconds << " s)";
    if (!bad.empty()) d << ";" << bad;
    o.detail = d.str();
    o.pass = mismatches == 0 && (expected_cases == 0 || cases == expected_cases) &&
             (limit_seconds <= 0 || secs < limit_seconds);
    return o;
}

Outcome table1() { return scan_families_outcome(scan_group("table1"), {6, 6, 0, 0}, 144, kTable1Seconds); }

Outcome table2() {
    ScanRange r;
    r.max = 4;
    return scan_families_outcome(scan_group("table2"), r, 768, kTable2Seconds);
}

bool strictly_separated(const std::vector<LinearForm>& hs, const RVec& a, const RVec& b) {
    for (const auto& h : hs)
        if (h(a).sign() * h(b).sign() < 0) return true;
    return false;
}

Outcome h11_boundary() {
    Outcome o;
    const auto& preset = find_preset("table2/H11", 3);
    struct Point {
        std::size_t p, q, r;
        bool tempered;
    };
    const std::vector<Point> points{{2, 1, 2, true},  {3, 1, 2, false}, {2, 1, 3, false},
                                    {1, 3, 1, true},  {1, 4, 1, false}, {3, 2, 3, true}};
    std::ostringstream d;
    int bad = 0;
    for (const auto& pt : points) {
        const std::vector<std::size_t> sizes{pt.p, pt.q, pt.r};
        const std::int64_t p = pt.p, q = pt.q, r = pt.r, n = p + q + r;
        bool ok = preset.predicate(sizes) == pt.tempered;

        // values along the last coordinate of each block, trace-zero projection
        auto full = deficit(build_sl_block(preset.pattern(sizes), TorusMode::FullDiagonal));
        const std::int64_t idx[3] = {p, p + q, n};
        const Rational expected[3] = {Rational(q - p + 1), Rational(p + r - q + 1), Rational(q - r + 1)};
        std::vector<RVec> negative_dirs;
        for (int k = 0; k < 3; ++k) {
            RVec e(n, Rational(-1, n));
            e[idx[k] - 1] += Rational(1);
            if (full.evaluate(e) != expected[k]) ok = false;
            if (expected[k] < Rational(0)) negative_dirs.push_back(e);
        }
        if (pt.tempered != negative_dirs.empty()) ok = false;

        // decision on the torus of [h, h]; the coordinate vectors live on the full diagonal torus
        Verdict v = check(build_sl_block(preset.pattern(sizes)));
        Verdict fv = check(build_sl_block(preset.pattern(sizes), TorusMode::FullDiagonal));
        if (v.tempered != pt.tempered || fv.tempered != pt.tempered) ok = false;
        if (v.tempered) {
            g_tempered.emplace_back("h11" + params_text(sizes), v);
        } else {
            const auto& w = v.result.witness();
            if (!(w.value < Rational(0)) || v.deficit.evaluate(w.direction) != w.value) ok = false;
            const auto& fw = fv.result.witness();
            if (!(fw.value < Rational(0)) || fv.deficit.evaluate(fw.direction) != fw.value) ok = false;
            auto hs = distinct_hyperplanes(fv.deficit);
            RVec neg;
            for (const auto& x : fw.direction) neg.push_back(-x);
            bool compatible = false;
            for (const auto& y : negative_dirs)
                if (!strictly_separated(hs, fw.direction, y) || !strictly_separated(hs, neg, y)) compatible = true;
            if (!compatible) ok = false;
            d << params_text(sizes) << " witness value " << w.value.str() << "; ";
        }
        if (!ok) {
            ++bad;
            d << params_text(sizes) << " FAILED; ";
        }
    }
    d << points.size() << " points, " << bad << " failures";
    o.pass = bad == 0;
    o.detail = d.str();
    return o;
}

Outcome classical_pairs() {
    return scan_families_outcome({"so-in-sl", "sp-in-sl", "complex-sl",
                                  "complex-so", "complex-sp"},
                                 {}, 0, 0);
}

Outcome block_products() {
    return scan_families_outcome({"product-sl", "product-sp", "product-so"}, {}, 0, 0);
}

Outcome quaternionic() {
    Outcome o;
    auto spec = extract_weights(quaternionic_pair_matrices(1, 0, 1, 1));
    PLFunction rh = rho_function(spec.h_module), rq = rho_function(spec.g_module);
    bool ok = spec.space()->dim() == 1;
    ok = ok && rh.equals_on_space(Rational(3, 2) * rq);
    RVec y = to_rational(spec.space()->basis().front());
    Rational ratio = rh.evaluate(y) / rq.evaluate(y);
    ok = ok && ratio == Rational(3, 2);
    Verdict v = check(spec);
    ok = ok && !v.tempered;
    o.pass = ok;
    o.detail = "rho_h/rho_q = " + ratio.str() + ", verdict " + (v.tempered ? "tempered" : "not tempered");
    return o;
}

Outcome tensor_products() {
    return scan_families_outcome({"tensor-1", "tensor-2", "tensor-3"}, {}, 0, 0);
}

PLFunction random_pl(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> dim(1, 4);
    std::uniform_int_distribution<int> terms(1, 6), c(-3, 3), coin(0, 1);
    std::size_t n = dim(rng);
    auto s = make_space(n);
    std::vector<AbsTerm> ts;
    int k = terms(rng);
    for (int i = 0; i < k; ++i) {
        RVec f(n);
        for (auto& x : f) x = c(rng);
        ts.push_back({c(rng), LinearForm(f)});
    }
    RVec l(n);
    if (coin(rng))
        for (auto& x : l) x = c(rng);
    return PLFunction(s, ts, LinearForm(l));
}

Outcome oracle() {
    Outcome o;
    std::mt19937_64 rng(500);
    int certs = 0, witnesses = 0, planted = 0, bad = 0;
    for (int trial = 0; trial < kOracleFunctions; ++trial) {
        PLFunction f = random_pl(rng);
        auto r = is_nonnegative(f);
        if (r.nonnegative()) {
            ++certs;
            if (grid_oracle(f, kOracleResolution)) ++bad;
        } else {
            ++witnesses;
            const auto& w = r.witness();
            if (!(w.value < Rational(0)) || f.evaluate(w.direction) != w.value) ++bad;
        }
    }
    // negative value planted on an integral direction with entries in [-3, 3]
    std::uniform_int_distribution<int> d(-3, 3);
    for (int trial = 0; trial < kOracleFunctions; ++trial) {
        PLFunction f = random_pl(rng);
        std::size_t n = f.space()->ambient_dim();
        IVec dir(n);
        do
            for (auto& x : dir) x = d(rng);
        while (std::all_of(dir.begin(), dir.end(), [](auto x) { return x == 0; }));
        RVec dv = to_rational(dir);
        std::size_t k = 0;
        while (dir[k] == 0) ++k;
        LinearForm e = LinearForm::unit(n, k);
        auto terms = f.abs_terms();
        terms.push_back({-(f.evaluate(dv) / e(dv).abs() + Rational(1)), e});
        PLFunction g(f.space(), terms, f.linear_term());
        ++planted;
        auto r = is_nonnegative(g);
        if (r.nonnegative()) {
            ++bad;
            continue;
        }
        const auto& w = r.witness();
        if (!(w.value < Rational(0)) || g.evaluate(w.direction) != w.value) ++bad;
        if (!grid_oracle(g, kOracleResolution)) ++bad;
    }
    o.pass = bad == 0 && certs > 0 && witnesses > 0;
    o.detail = std::to_string(certs) + " certificates, " + std::to_string(witnesses) + " witnesses, " +
               std::to_string(planted) + " planted, " + std::to_string(bad) + " inconsistencies";
    return o;
}

Outcome levi_identity() {
    Outcome o;
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> num(-12, 12), den(1, 7);
    int patterns = 0, bad = 0;
    long evaluations = 0;
    for (const auto* name : {"table1/H2", "table2/H7"}) {
        const auto& preset = find_preset(name, std::string(name).starts_with("table1") ? 2 : 3);
        std::vector<std::vector<std::size_t>> points;
        for (std::size_t p = 1; p <= 3; ++p)
            for (std::size_t q = 1; q <= 3; ++q) {
                if (preset.kinds.size() == 2) points.push_back({p, q});
                else
                    for (std::size_t r = 1; r <= 3; ++r) points.push_back({p, q, r});
            }
        for (const auto& sizes : points) {
            ++patterns;
            auto pat = preset.pattern(sizes);
            auto spec = build_sl_block(pat);
            auto lv = levi_decomposition(pat);
            PLFunction lhs = deficit(spec);
            PLFunction rhs = rho_function(lv.l_over_s) + Rational(2) * rho_function(lv.u_over_v) - rho_function(lv.s);
            bool ok = lhs.equals_on_space(rhs);
            for (int k = 0; k < kLeviPoints; ++k) {
                RVec y(spec.space()->ambient_dim());
                for (const auto& b : spec.space()->basis()) {
                    Rational c(num(rng), den(rng));
                    for (std::size_t i = 0; i < y.size(); ++i) y[i] += c * Rational(b[i]);
                }
                ++evaluations;
                if (lhs.evaluate(y) != rhs.evaluate(y)) ok = false;
            }
            if (!ok) ++bad;
        }
    }
    o.pass = bad == 0;
    o.detail = std::to_string(patterns) + " patterns, " + std::to_string(evaluations) + " exact evaluations, " +
               std::to_string(bad) + " disagreements";
    return o;
}

Outcome decay() {
    Outcome o;
    auto t0 = Clock::now();
    const std::vector<std::string> matrices{"diag(1,-1)", "diag(2,-1)", "diag(2,-1,-1)", "diag(1,0,-1)",
                                            "diag(3,1,-1,-2)"};
    std::vector<double> ts;
    for (int i = 0; i <= 8; ++i) ts.push_back(0.25 * i);
    std::ostringstream d;
    d.precision(3);
    int fits = 0, bad = 0;
    std::uint64_t seed = 11;
    for (const auto& m : matrices) {
        auto a = parse_matrix(m);
        for (const auto* kind : {"box", "ball"}) {
            auto body = ConvexBody::parse(kind + std::to_string(a.rows()));
            auto fit = verify_decay(a, body, ts, kDecaySamples, seed++, kSlopeTolerance);
            ++fits;
            if (!fit.pass) {
                ++bad;
                d << m << " " << body.describe() << " slope " << fit.slope << " vs " << fit.predicted_slope << "; ";
            }
        }
    }
    double secs = seconds_since(t0);
    d << fits << " fits, " << bad << " outside +-" << kSlopeTolerance << ", " << std::fixed;
    d.precision(1);
    d << secs << " s (limit " << kDecaySeconds << " s)";
    o.pass = bad == 0 && secs < kDecaySeconds;
    o.detail = d.str();
    return o;
}

Outcome translates() {
    Outcome o;
    auto s = translate_suite(2, 4, kTranslateTrials, kTranslateSamples, 77);
    o.pass = s.trials == kTranslateTrials && s.failures.empty();
    o.detail = std::to_string(s.trials) + " trials, " + std::to_string(s.failures.size()) + " significant violations";
    return o;
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("temper_acceptance_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

int recheck_file(const fs::path& file) {
    std::ostringstream out, err;
    return run_cli({"recheck", file.string()}, out, err);
}

Outcome round_trip() {
    Outcome o;
    TempDir dir;
    std::mt19937_64 rng(12);
    std::size_t rejected = 0, mutated = 0, missed = 0, symmetric = 0, index = 0;
    for (const auto& [label, v] : g_tempered) {
        const auto& cert = v.result.certificate();
        if (!cert.orbits.empty()) ++symmetric;
        fs::path file = dir.path / ("v" + std::to_string(index++) + ".json");
        std::ofstream(file) << to_json(v).dump();
        if (recheck_file(file) != kExitOk) {
            ++rejected;
            if (rejected <= 5) o.detail += label + " rejected; ";
        }
        if (cert.ray_values.empty()) continue;
        Json ev = to_json(cert);
        std::uniform_int_distribution<std::size_t> pick(0, cert.ray_values.size() - 1);
        std::size_t k = pick(rng);
        ev["ray_values"][k] = to_json(cert.ray_values[k] + Rational(1));
        fs::path bad = dir.path / "mutated.json";
        std::ofstream(bad) << ev.dump();
        ++mutated;
        if (recheck_file(bad) != kExitMismatch) ++missed;
    }
    o.pass = rejected == 0 && missed == 0 && !g_tempered.empty();
    o.detail += std::to_string(g_tempered.size()) + " tempered verdicts (" + std::to_string(symmetric) +
                " symmetry-reduced), " + std::to_string(rejected) + " rejected; " + std::to_string(mutated) +
                " single ray mutations, " + std::to_string(missed) + " undetected";
    return o;
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        Outcome (*run)();
    };
    const Criterion criteria[] = {
        {"two-block table", table1},
        {"three-block table", table2},
        {"three-block boundary", h11_boundary},
        {"classical pairs", classical_pairs},
        {"block-diagonal products", block_products},
        {"quaternionic ratio", quaternionic},
        {"tensor products", tensor_products},
        {"verifier vs grid oracle", oracle},
        {"Levi identity", levi_identity},
        {"volume decay", decay},
        {"translate bound", translates},
        {"certificate round trip", round_trip},
    };
    int failed = 0, number = 0;
    for (const auto& c : criteria) {
        ++number;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        if (!o.pass) ++failed;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << number << " " << c.name << ": " << o.detail << std::endl;
    }
    std::cout << (12 - failed) << "/12 criteria passed" << std::endl;
    return failed ? 1 : 0;
}
