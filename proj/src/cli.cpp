#include "temper/cli.hpp"

#include "temper/check.hpp"
#include "temper/serialize.hpp"
#include "temper/volume.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

namespace temper {

namespace {

struct CheckArgs {
    std::string spec_path;
    bool witness_only = false;
    bool dominant = false;
    bool no_prune = false;
    std::string certificate_out;
};

struct ScanArgs {
    std::string family;
    ScanRange range;
    std::string format = "text";
    bool json = false;
    std::string json_out;
    unsigned threads = 0;
    bool full = false;
};

struct DecayArgs {
    std::string matrix;
    std::string body = "box2";
    double tmin = 0, tmax = 4;
    std::size_t steps = 9;
    std::uint64_t samples = 100000;
    std::uint64_t seed = 7;
    double tolerance = 0.1;
    std::string gnuplot;
    unsigned threads = 0;
};

struct TranslateArgs {
    std::size_t dim = 3;
    std::size_t trials = 100;
    std::uint64_t samples = 20000;
    std::uint64_t seed = 7;
};

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw InputError("cannot write " + path);
    f << text;
}

int cmd_check(const CheckArgs& a, std::ostream& out) {
    SpecRequest req = parse_spec(read_json_file(a.spec_path));
    CheckOptions opts;
    opts.use_symmetry = a.dominant;
    opts.prune_antipodal = !a.no_prune;
    Verdict v = run_spec(req, opts);
    if (!a.certificate_out.empty()) {
        Json ev = v.tempered ? to_json(v.result.certificate()) : to_json(v.result.witness());
        write_file(a.certificate_out, ev.dump(2) + "\n");
    }
    if (a.witness_only) {
        out << (v.tempered ? Json(nullptr) : to_json(v.result.witness())).dump(2) << "\n";
        return kExitOk;
    }
    out << to_json(v).dump(2) << "\n";
    return kExitOk;
}

int cmd_scan(const ScanArgs& a, std::ostream& out) {
    std::vector<std::string> names = scan_group(a.family);
    ScanOptions opts;
    opts.threads = a.threads;
    opts.check.use_symmetry = !a.full;
    const std::string format = a.json ? "json" : a.format;
    if (format != "text" && format != "json" && format != "both") throw InputError("--format must be text, json or both");
    Json reports = Json::array();
    std::size_t mismatches = 0;
    for (const auto& name : names) {
        ScanReport r = scan_family(name, a.range, opts);
        mismatches += r.mismatches.size();
        if (format != "json") out << render_table(r) << "\n";
        reports.push_back(to_json(r));
    }
    Json doc{{"schema", "temper-scan/1"}, {"reports", reports}, {"mismatches", mismatches}};
    if (format != "text") out << doc.dump(2) << "\n";
    if (!a.json_out.empty()) write_file(a.json_out, doc.dump(2) + "\n");
    return mismatches ? kExitMismatch : kExitOk;
}

int cmd_decay(const DecayArgs& a, std::ostream& out) {
    if (a.matrix.empty()) throw InputError("--matrix is required");
    if (a.steps < 3) throw InputError("--steps must be at least 3");
    if (!(a.tmax > a.tmin)) throw InputError("--tmax must exceed --tmin");
    Eigen::MatrixXd m = parse_matrix(a.matrix);
    ConvexBody body = ConvexBody::parse(a.body);
    std::vector<double> times;
    for (std::size_t i = 0; i < a.steps; ++i)
        times.push_back(a.tmin + (a.tmax - a.tmin) * static_cast<double>(i) / static_cast<double>(a.steps - 1));
    DecayFit fit = verify_decay(m, body, times, a.samples, a.seed, a.tolerance, a.threads ? a.threads : default_threads());
    if (!a.gnuplot.empty()) write_gnuplot(fit, a.gnuplot);
    Json j{{"schema", "temper-decay/1"},
           {"matrix", a.matrix},
           {"body", body.describe()},
           {"samples", a.samples},
           {"seed", a.seed},
           {"t", fit.t},
           {"log_volume", fit.log_volume},
           {"log_stderr", fit.log_stderr},
           {"dropped_t", fit.dropped_t},
           {"tail_start", fit.tail_start},
           {"trace", fit.trace},
           {"rho", fit.rho},
           {"slope", fit.slope},
           {"slope_stderr", fit.slope_stderr},
           {"predicted_slope", fit.predicted_slope},
           {"tolerance", fit.tolerance},
           {"pass", fit.pass}};
    out << j.dump(2) << "\n";
    return fit.pass ? kExitOk : kExitMismatch;
}

int cmd_translate(const TranslateArgs& a, std::ostream& out) {
    if (a.dim < 1) throw InputError("--dim must be positive");
    TranslateSuite s = translate_suite(a.dim, a.dim, a.trials, a.samples, a.seed);
    Json j{{"schema", "temper-translate/1"},
           {"dim", a.dim},
           {"trials", s.trials},
           {"passes", s.passes},
           {"failures", s.failures},
           {"samples", a.samples},
           {"seed", a.seed}};
    out << j.dump(2) << "\n";
    return s.failures.empty() ? kExitOk : kExitMismatch;
}

int cmd_recheck(const std::string& path, std::ostream& out) {
    Json doc = read_json_file(path);
    JsonCursor c(doc);
    // A verdict carries its evidence; a certificate file is the evidence itself.
    if (c.has("schema") && doc["schema"] == kVerdictSchema) c = c["evidence"];
    std::string kind = c["kind"].str();
    RecheckReport rep;
    if (kind == "certificate") rep = recheck(certificate_from_json(c));
    else if (kind == "witness") rep = recheck(witness_from_json(c));
    else c["kind"].fail("expected \"certificate\" or \"witness\"");
    Json j{{"kind", kind}, {"ok", rep.ok}, {"problems", rep.problems}};
    out << j.dump(2) << "\n";
    return rep.ok ? kExitOk : kExitMismatch;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact temperedness checks for homogeneous spaces", "temper"};
    app.require_subcommand(1);

    CheckArgs ca;
    auto* check_cmd = app.add_subcommand("check", "decide the criterion for a spec file and print the verdict");
    check_cmd->add_option("spec", ca.spec_path, "spec file (schema temper-spec/1)")->required();
    check_cmd->add_flag("--witness-only", ca.witness_only, "print only the witness (null when tempered)");
    check_cmd->add_flag("--dominant-chamber", ca.dominant, "restrict to the fundamental domain of verified symmetries");
    check_cmd->add_flag("--no-prune", ca.no_prune, "enumerate both chambers of every antipodal pair");
    check_cmd->add_option("--evidence-out", ca.certificate_out, "also write the certificate or witness to this file");

    ScanArgs sa;
    auto* scan_cmd = app.add_subcommand("scan", "run a parameter scan and compare with the closed-form predicate");
    std::string families_help = "family: table1, table2, all, or one of";
    for (const auto& f : scan_families()) families_help += " " + f.name;
    scan_cmd->add_option("family", sa.family, families_help)->required();
    scan_cmd->add_option("--pmax", sa.range.pmax, "largest p for two-block tables")->capture_default_str();
    scan_cmd->add_option("--qmax", sa.range.qmax, "largest q for two-block tables")->capture_default_str();
    scan_cmd->add_option("--max", sa.range.max, "size bound for three-block tables and classical families");
    scan_cmd->add_option("--n", sa.range.n, "bound on n for partition and tensor families");
    scan_cmd->add_option("--format", sa.format, "text, json or both")->capture_default_str();
    scan_cmd->add_flag("--json", sa.json, "same as --format json");
    scan_cmd->add_option("--json-out", sa.json_out, "write the JSON report to a file");
    scan_cmd->add_option("--threads", sa.threads, "worker threads (default TEMPER_THREADS or 1)");
    scan_cmd->add_flag("--full", sa.full, "enumerate every chamber instead of the symmetry-reduced domain");

    auto* volume_cmd = app.add_subcommand("volume", "Monte-Carlo volume checks");
    volume_cmd->require_subcommand(1);
    DecayArgs da;
    auto* decay_cmd = volume_cmd->add_subcommand("decay", "fit the decay rate of vol(e^{tA} C cap C)");
    decay_cmd->add_option("--matrix", da.matrix, "diag(a,b,...) or [[...],...]")->required();
    decay_cmd->add_option("--body", da.body, "boxN or ballN")->capture_default_str();
    decay_cmd->add_option("--tmin", da.tmin)->capture_default_str();
    decay_cmd->add_option("--tmax", da.tmax)->capture_default_str();
    decay_cmd->add_option("--steps", da.steps, "number of sample times")->capture_default_str();
    decay_cmd->add_option("--samples", da.samples, "samples per time")->capture_default_str();
    decay_cmd->add_option("--seed", da.seed)->capture_default_str();
    decay_cmd->add_option("--tolerance", da.tolerance, "allowed |slope + rho|")->capture_default_str();
    decay_cmd->add_option("--gnuplot", da.gnuplot, "write (t, log volume, stderr) rows to this file");
    decay_cmd->add_option("--threads", da.threads);
    TranslateArgs ta;
    auto* translate_cmd = volume_cmd->add_subcommand("translate", "translate bound on random symmetric polytopes");
    translate_cmd->add_option("--dim", ta.dim)->capture_default_str();
    translate_cmd->add_option("--trials", ta.trials)->capture_default_str();
    translate_cmd->add_option("--samples", ta.samples)->capture_default_str();
    translate_cmd->add_option("--seed", ta.seed)->capture_default_str();

    std::string recheck_path;
    auto* recheck_cmd = app.add_subcommand("recheck", "replay a certificate, witness or verdict file");
    recheck_cmd->add_option("file", recheck_path)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }

    try {
        if (check_cmd->parsed()) return cmd_check(ca, out);
        if (scan_cmd->parsed()) return cmd_scan(sa, out);
        if (decay_cmd->parsed()) return cmd_decay(da, out);
        if (translate_cmd->parsed()) return cmd_translate(ta, out);
        if (recheck_cmd->parsed()) return cmd_recheck(recheck_path, out);
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const OverflowError& e) {
        err << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitInput;
}

} // namespace temper
