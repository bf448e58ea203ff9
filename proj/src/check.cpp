#include "temper/check.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <sstream>
#include <thread>

namespace temper {

Verdict check(const PairSpec& spec, const CheckOptions& options) {
    spec.validate();
    Verdict v;
    v.metadata = spec.metadata;
    v.deficit = deficit(spec);
    VerifyOptions vo;
    vo.use_symmetry = options.use_symmetry;
    vo.prune_antipodal = options.prune_antipodal;
    vo.keep_certificate = options.keep_certificate;
    v.result = is_nonnegative(v.deficit, vo);
    v.tempered = v.result.nonnegative();
    if (!v.tempered) {
        const RVec& y = v.result.witness().direction;
        v.rho_h = evaluate_pl(rho_function(spec.h_module), y);
        v.rho_q = evaluate_pl(rho_function(spec.g_module), y);
        if (spec.v_module) v.rho_v = evaluate_pl(rho_function(*spec.v_module), y);
    }
    return v;
}

Verdict check_with_module(const PairSpec& spec, const CheckOptions& options) {
    if (!spec.v_module) throw InputError("check_with_module: the pair carries no extra module V");
    return check(spec, options);
}

// --- tensor dictionary ----------------------------------------------------------------

TensorMapping map_tensor_question(const TensorQuestion& q) {
    if (q.params.size() != 3) throw InputError("tensor question needs exactly three parameters");
    TensorMapping m;
    if (q.variant == 1) {
        const std::size_t k = q.params[0], l = q.params[1], n = q.params[2];
        if (k > n || l > n) throw InputError("tensor question (k, l, n) needs k, l <= n");
        const long sk = static_cast<long>(k), sl = static_cast<long>(l), sn = static_cast<long>(n);
        m.preset = "table2/H12";
        m.sizes = {static_cast<std::size_t>(std::labs(sk - sl)), std::min(k, l), n - std::max(k, l)};
        m.predicted = std::labs(sk - sl) <= 1 && std::labs(sk + sl - sn) <= 1;
        m.predicate_text = "|k-l| <= 1 and |k+l-n| <= 1";
        return m;
    }
    const long a = static_cast<long>(q.params[0]), b = static_cast<long>(q.params[1]), c = static_cast<long>(q.params[2]);
    if (q.variant == 2) {
        m.preset = "table2/H11";
        m.sizes = {q.params[1], q.params[0], q.params[2]};
        m.predicted = std::max(b, c) - 1 <= a && a <= b + c + 1;
        m.predicate_text = "max(b,c)-1 <= a <= b+c+1";
        return m;
    }
    if (q.variant == 3) {
        m.preset = "table2/H10";
        m.sizes = q.params;
        m.predicted = 2 * std::max({a, b, c}) <= a + b + c + 1;
        m.predicate_text = "2 max(a,b,c) <= n+1";
        return m;
    }
    throw InputError("tensor question variant must be 1, 2 or 3");
}

Verdict tensor_product_check(const TensorQuestion& q, const CheckOptions& options) {
    TensorMapping m = map_tensor_question(q);
    PairSpec spec = build_sl_block(find_preset(m.preset, 3).pattern(m.sizes));
    std::string params;
    for (std::size_t i = 0; i < q.params.size(); ++i) params += (i ? "," : "") + std::to_string(q.params[i]);
    spec.metadata["tensor_variant"] = std::to_string(q.variant);
    spec.metadata["tensor_params"] = params;
    spec.metadata["mapped_to"] = m.preset;
    return check(spec, options);
}

// --- scan families ----------------------------------------------------------------------

namespace {

using Params = std::vector<std::size_t>;
using PointList = std::vector<Params>;

std::size_t pick(std::size_t given, std::size_t fallback) { return given ? given : fallback; }

void partitions_into(std::size_t rest, std::size_t largest, Params& cur, PointList& out) {
    if (rest == 0) {
        if (cur.size() >= 2) out.push_back(cur);
        return;
    }
    for (std::size_t k = std::min(rest, largest); k >= 1; --k) {
        cur.push_back(k);
        partitions_into(rest - k, k, cur, out);
        cur.pop_back();
    }
}

PointList partitions_up_to(std::size_t nmax) {
    PointList out;
    for (std::size_t m = 2; m <= nmax; ++m) {
        Params cur;
        partitions_into(m, m, cur, out);
    }
    return out;
}

std::size_t sum(const Params& p) {
    std::size_t s = 0;
    for (auto x : p) s += x;
    return s;
}

Verdict run_spec(const PairSpec& spec, const CheckOptions& o) { return check(spec, o); }

ScanFamily preset_family(const BlockPreset& preset) {
    ScanFamily f;
    f.name = preset.table + "/" + preset.name;
    const bool three = preset.kinds.size() == 3;
    f.description = "block pattern " + preset.name + " in sl(" + (three ? "p+q+r" : "p+q") + ", R)";
    f.predicate_text = preset.predicate_text;
    f.param_names = three ? std::vector<std::string>{"p", "q", "r"} : std::vector<std::string>{"p", "q"};
    if (three) {
        f.points = [](const ScanRange& r) {
            PointList out;
            const std::size_t m = pick(r.max, 4);
            for (std::size_t p = 1; p <= m; ++p)
                for (std::size_t q = 1; q <= m; ++q)
                    for (std::size_t s = 1; s <= m; ++s) out.push_back({p, q, s});
            return out;
        };
        f.ranges = [](const ScanRange& r) {
            auto m = std::to_string(pick(r.max, 4));
            return "1 <= p, q, r <= " + m;
        };
    } else {
        f.points = [](const ScanRange& r) {
            PointList out;
            for (std::size_t p = 1; p <= r.pmax; ++p)
                for (std::size_t q = 1; q <= r.qmax; ++q) out.push_back({p, q});
            return out;
        };
        f.ranges = [](const ScanRange& r) {
            return "1 <= p <= " + std::to_string(r.pmax) + ", 1 <= q <= " + std::to_string(r.qmax);
        };
    }
    const BlockPreset* pp = &preset;
    f.run = [pp](const Params& s, const CheckOptions& o) { return run_spec(build_sl_block(pp->pattern(s)), o); };
    f.predict = [pp](const Params& s) { return pp->predicate(s); };
    return f;
}

std::vector<ScanFamily> make_families() {
    std::vector<ScanFamily> out;
    for (const auto& p : table1_presets()) out.push_back(preset_family(p));
    for (const auto& p : table2_presets()) out.push_back(preset_family(p));

    out.push_back({"product-sl", "product of sl(n_i, R) in sl(n, R)", "2 n_1 <= n + 1", {"parts"},
                   [](const ScanRange& r) { return partitions_up_to(pick(r.n, 8)); },
                   [](const ScanRange& r) { return "partitions of 2 <= n <= " + std::to_string(pick(r.n, 8)) + " with >= 2 parts"; },
                   [](const Params& s, const CheckOptions& o) { return run_spec(build_product_in_sl(s), o); },
                   [](const Params& s) { return 2 * s.front() <= sum(s) + 1; }});
    out.push_back({"product-sp", "product of sp(n_i, R) in sp(n, R)", "2 n_1 <= n", {"parts"},
                   [](const ScanRange& r) { return partitions_up_to(pick(r.n, 4)); },
                   [](const ScanRange& r) { return "partitions of 2 <= n <= " + std::to_string(pick(r.n, 4)) + " with >= 2 parts"; },
                   [](const Params& s, const CheckOptions& o) { return run_spec(build_product_in_sp(s), o); },
                   [](const Params& s) { return 2 * s.front() <= sum(s); }});
    out.push_back({"product-so", "so(p1,q1) + so(p2,q2) in so(p1+p2, q1+q2)", "|p1+q1-p2-q2| <= 2",
                   {"p1", "q1", "p2", "q2"},
                   [](const ScanRange& r) {
                       PointList pts;
                       const std::size_t m = pick(r.max, 6);
                       for (std::size_t a = 1; a <= m; ++a)
                           for (std::size_t b = 1; b <= m; ++b)
                               for (std::size_t c = 1; c <= m; ++c)
                                   for (std::size_t d = 1; d <= m; ++d)
                                       if (a + b + c + d <= m) pts.push_back({a, b, c, d});
                       return pts;
                   },
                   [](const ScanRange& r) { return "p1, q1, p2, q2 >= 1, p + q <= " + std::to_string(pick(r.max, 6)); },
                   [](const Params& s, const CheckOptions& o) { return run_spec(build_so_pair(s[0], s[1], s[2], s[3]), o); },
                   [](const Params& s) {
                       long d = static_cast<long>(s[0] + s[1]) - static_cast<long>(s[2] + s[3]);
                       return std::labs(d) <= 2;
                   }});
    out.push_back({"so-in-sl", "so(p, q) in sl(p+q, R)", "always", {"p", "q"},
                   [](const ScanRange& r) {
                       PointList pts;
                       const std::size_t m = pick(r.max, 6);
                       for (std::size_t n = 2; n <= m; ++n)
                           for (std::size_t p = 0; p <= n; ++p) pts.push_back({p, n - p});
                       return pts;
                   },
                   [](const ScanRange& r) { return "2 <= p + q <= " + std::to_string(pick(r.max, 6)); },
                   [](const Params& s, const CheckOptions& o) { return run_spec(build_so_in_sl(s[0], s[1]), o); },
                   [](const Params&) { return true; }});
    out.push_back({"sp-in-sl", "sp(m, R) in sl(2m, R)", "never", {"m"},
                   [](const ScanRange& r) {
                       PointList pts;
                       for (std::size_t m = 1; m <= pick(r.max, 3); ++m) pts.push_back({m});
                       return pts;
                   },
                   [](const ScanRange& r) { return "1 <= m <= " + std::to_string(pick(r.max, 3)); },
                   [](const Params& s, const CheckOptions& o) { return run_spec(build_sp_in_sl(s[0]), o); },
                   [](const Params&) { return false; }});

    struct Complex {
        const char* name;
        const char* description;
        const char* predicate;
        ComplexFamily family;
        std::size_t bound; // m + n bound giving rank <= 4
        bool (*predict)(long, long);
    };
    static const Complex complex[] = {
        {"complex-sl", "sl(m,C) + sl(n,C) in sl(m+n,C)", "|m-n| <= 1", ComplexFamily::SL, 5,
         [](long m, long n) { return std::labs(m - n) <= 1; }},
        {"complex-so", "so(m,C) + so(n,C) in so(m+n,C)", "|m-n| <= 2", ComplexFamily::SO, 9,
         [](long m, long n) { return std::labs(m - n) <= 2; }},
        {"complex-sp", "sp(m,C) + sp(n,C) in sp(m+n,C)", "m = n", ComplexFamily::SP, 4,
         [](long m, long n) { return m == n; }},
    };
    for (const auto& c : complex) {
        const Complex* cp = &c;
        out.push_back({c.name, c.description, c.predicate, {"m", "n"},
                       [cp](const ScanRange& r) {
                           PointList pts;
                           const std::size_t b = pick(r.max, cp->bound);
                           for (std::size_t m = 1; m < b; ++m)
                               for (std::size_t n = 1; m + n <= b; ++n) pts.push_back({m, n});
                           return pts;
                       },
                       [cp](const ScanRange& r) { return "m, n >= 1, m + n <= " + std::to_string(pick(r.max, cp->bound)); },
                       [cp](const Params& s, const CheckOptions& o) { return run_spec(build_complex_product(cp->family, s[0], s[1]), o); },
                       [cp](const Params& s) { return cp->predict(static_cast<long>(s[0]), static_cast<long>(s[1])); }});
    }

    out.push_back({"tensor-1", "two-step flag tensor product, mapped to table2/H12", "|k-l| <= 1 and |k+l-n| <= 1",
                   {"k", "l", "n"},
                   [](const ScanRange& r) {
                       PointList pts;
                       for (std::size_t n = 2; n <= pick(r.n, 8); ++n)
                           for (std::size_t k = 1; k < n; ++k)
                               for (std::size_t l = 1; l < n; ++l) pts.push_back({k, l, n});
                       return pts;
                   },
                   [](const ScanRange& r) { return "2 <= n <= " + std::to_string(pick(r.n, 8)) + ", 1 <= k, l <= n-1"; },
                   [](const Params& s, const CheckOptions& o) { return tensor_product_check({1, s}, o); },
                   [](const Params& s) { return map_tensor_question({1, s}).predicted; }});
    for (int variant : {2, 3}) {
        out.push_back({"tensor-" + std::to_string(variant),
                       variant == 2 ? "three-step with two-step flag, mapped to table2/H11"
                                    : "three-step with reversed three-step flag, mapped to table2/H10",
                       variant == 2 ? "max(b,c)-1 <= a <= b+c+1" : "2 max(a,b,c) <= n+1",
                       {"a", "b", "c"},
                       [](const ScanRange& r) {
                           PointList pts;
                           const std::size_t nmax = pick(r.n, 8);
                           for (std::size_t a = 1; a <= nmax; ++a)
                               for (std::size_t b = 1; a + b <= nmax; ++b)
                                   for (std::size_t c = 1; a + b + c <= nmax; ++c) pts.push_back({a, b, c});
                           return pts;
                       },
                       [](const ScanRange& r) { return "a, b, c >= 1, a + b + c <= " + std::to_string(pick(r.n, 8)); },
                       [variant](const Params& s, const CheckOptions& o) { return tensor_product_check({variant, s}, o); },
                       [variant](const Params& s) { return map_tensor_question({variant, s}).predicted; }});
    }
    return out;
}

} // namespace

const std::vector<ScanFamily>& scan_families() {
    static const std::vector<ScanFamily> families = make_families();
    return families;
}

const ScanFamily& find_scan_family(const std::string& name) {
    for (const auto& f : scan_families())
        if (f.name == name) return f;
    throw InputError("unknown scan family '" + name + "'");
}

std::vector<std::string> scan_group(const std::string& name) {
    std::vector<std::string> out;
    for (const auto& f : scan_families()) {
        if (name == "all" || f.name == name || f.name.rfind(name + "/", 0) == 0) out.push_back(f.name);
    }
    if (out.empty()) throw InputError("unknown scan family '" + name + "'");
    return out;
}

unsigned default_threads() {
    if (const char* env = std::getenv("TEMPER_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1 && v <= 256) return static_cast<unsigned>(v);
    }
    return 1;
}

ScanReport scan_family(const std::string& name, const ScanRange& range, const ScanOptions& options) {
    const ScanFamily& fam = find_scan_family(name);
    ScanReport rep;
    rep.family = fam.name;
    rep.description = fam.description;
    rep.predicate_text = fam.predicate_text;
    rep.param_names = fam.param_names;
    rep.ranges = fam.ranges(range);
    for (auto& p : fam.points(range)) {
        ScanPoint pt;
        pt.params = std::move(p);
        pt.predicted = fam.predict(pt.params);
        rep.points.push_back(std::move(pt));
    }

    CheckOptions co = options.check;
    if (options.keep_verdicts) co.keep_certificate = true;
    auto t0 = std::chrono::steady_clock::now();
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < rep.points.size(); i = next++) {
            ScanPoint& pt = rep.points[i];
            try {
                Verdict v = fam.run(pt.params, co);
                pt.tempered = v.tempered;
                pt.stats = v.result.stats;
                if (options.keep_verdicts) pt.verdict = std::move(v);
            } catch (const std::exception& e) {
                pt.error = e.what();
            }
        }
    };
    const unsigned threads = std::max(1u, options.threads ? options.threads : default_threads());
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (std::size_t i = 0; i < rep.points.size(); ++i)
        if (rep.points[i].mismatch()) rep.mismatches.push_back(i);
    return rep;
}

// --- rendering ------------------------------------------------------------------------------

namespace {

std::string cell(const ScanPoint& p) {
    if (!p.error.empty()) return "E!";
    std::string s = p.tempered ? "T" : ".";
    if (p.mismatch()) s += "!";
    return s;
}

std::string params_text(const std::vector<std::size_t>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

void grid(std::ostringstream& os, const std::vector<const ScanPoint*>& pts, std::size_t row, std::size_t col,
          const std::string& row_name, const std::string& col_name) {
    std::size_t rmax = 0, cmax = 0;
    for (auto* p : pts) {
        rmax = std::max(rmax, p->params[row]);
        cmax = std::max(cmax, p->params[col]);
    }
    std::vector<std::vector<std::string>> g(rmax + 1, std::vector<std::string>(cmax + 1, ""));
    for (auto* p : pts) g[p->params[row]][p->params[col]] = cell(*p);
    os << "  " << std::setw(4) << (row_name + "\\" + col_name);
    for (std::size_t c = 1; c <= cmax; ++c) os << std::setw(4) << c;
    os << "\n";
    for (std::size_t r = 1; r <= rmax; ++r) {
        os << "  " << std::setw(4) << r;
        for (std::size_t c = 1; c <= cmax; ++c) os << std::setw(4) << g[r][c];
        os << "\n";
    }
}

} // namespace

std::string render_table(const ScanReport& rep) {
    std::ostringstream os;
    os << rep.family << ": " << rep.description << "\n";
    os << "  predicate: " << rep.predicate_text << "   range: " << rep.ranges << "\n";
    const bool table = rep.family.rfind("table", 0) == 0;
    if (table) os << "  T tempered, . not tempered, ! disagrees with the predicate\n";
    if (table && rep.param_names.size() == 2) {
        std::vector<const ScanPoint*> pts;
        for (const auto& p : rep.points) pts.push_back(&p);
        grid(os, pts, 0, 1, "p", "q");
    } else if (table && rep.param_names.size() == 3) {
        std::size_t rmax = 0;
        for (const auto& p : rep.points) rmax = std::max(rmax, p.params[2]);
        for (std::size_t r = 1; r <= rmax; ++r) {
            os << "  r = " << r << "\n";
            std::vector<const ScanPoint*> pts;
            for (const auto& p : rep.points)
                if (p.params[2] == r) pts.push_back(&p);
            grid(os, pts, 0, 1, "p", "q");
        }
    } else {
        std::string names;
        for (std::size_t i = 0; i < rep.param_names.size(); ++i) names += (i ? "," : "") + rep.param_names[i];
        os << "  " << std::left << std::setw(16) << names << std::setw(11) << "predicted" << std::setw(11) << "verdict"
           << std::right << std::setw(10) << "chambers" << "\n";
        for (const auto& p : rep.points) {
            os << "  " << std::left << std::setw(16) << params_text(p.params) << std::setw(11)
               << (p.predicted ? "tempered" : "no") << std::setw(11)
               << (!p.error.empty() ? "error" : p.tempered ? "tempered" : "no") << std::right << std::setw(10)
               << p.stats.chambers << (p.mismatch() ? "  MISMATCH" : "") << "\n";
        }
    }
    std::size_t tempered = 0;
    for (const auto& p : rep.points) tempered += p.tempered;
    os << "  " << rep.points.size() << " points, " << tempered << " tempered, " << rep.mismatches.size()
       << " mismatches";
    for (auto i : rep.mismatches) {
        os << "\n    mismatch at " << params_text(rep.points[i].params);
        if (!rep.points[i].error.empty()) os << ": " << rep.points[i].error;
    }
    os << "\n";
    return os.str();
}

} // namespace temper
