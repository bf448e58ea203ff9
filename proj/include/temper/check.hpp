#pragma once

// Verdicts for subalgebra pairs, parameter scans over the shipped families and
// the tensor-product dictionary.

#include "temper/core.hpp"
#include "temper/generators.hpp"
#include "temper/plverify.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace temper {

struct CheckOptions {
    /// Restrict to the fundamental domain of the verified coordinate symmetries.
    bool use_symmetry = false;
    bool prune_antipodal = true;
    bool keep_certificate = true;
};

struct Verdict {
    bool tempered = false;
    PLFunction deficit;
    VerifyResult result;
    std::map<std::string, std::string> metadata;
    /// rho values at the witness direction (not tempered only).
    std::optional<Rational> rho_h, rho_q, rho_v;
};

/// rho_h <= rho_{g/h} (+ 2 rho_V when the spec carries V).
Verdict check(const PairSpec& spec, const CheckOptions& options = {});
/// Same decision; throws InputError when the spec has no V.
Verdict check_with_module(const PairSpec& spec, const CheckOptions& options = {});

// --- tensor products -------------------------------------------------------------

/// variant 1: params (k, l, n); variants 2 and 3: params (a, b, c).
struct TensorQuestion {
    int variant = 1;
    std::vector<std::size_t> params;
};

struct TensorMapping {
    std::string preset; ///< "table2/H12", "table2/H11" or "table2/H10"
    std::vector<std::size_t> sizes;
    bool predicted = false;
    std::string predicate_text;
};

TensorMapping map_tensor_question(const TensorQuestion& q);
Verdict tensor_product_check(const TensorQuestion& q, const CheckOptions& options = {});

// --- scans ------------------------------------------------------------------------

struct ScanRange {
    std::size_t pmax = 6;
    std::size_t qmax = 6;
    /// Size bound for three-parameter and classical families; 0 picks the family default.
    std::size_t max = 0;
    /// Bound on n for partition and tensor families; 0 picks the family default.
    std::size_t n = 0;
};

struct ScanPoint {
    std::vector<std::size_t> params;
    bool predicted = false;
    bool tempered = false;
    VerifyStats stats;
    std::optional<Verdict> verdict; ///< kept when ScanOptions::keep_verdicts
    std::string error;              ///< construction or arithmetic failure
    bool mismatch() const { return !error.empty() || predicted != tempered; }
};

struct ScanReport {
    std::string family;
    std::string description;
    std::string predicate_text;
    std::vector<std::string> param_names;
    std::string ranges;
    std::vector<ScanPoint> points;
    std::vector<std::size_t> mismatches; ///< indices into points
    double seconds = 0;
};

struct ScanOptions {
    CheckOptions check{true, true, false};
    bool keep_verdicts = false;
    unsigned threads = 0; ///< 0: TEMPER_THREADS or 1
};

struct ScanFamily {
    std::string name;
    std::string description;
    std::string predicate_text;
    std::vector<std::string> param_names;
    std::function<std::vector<std::vector<std::size_t>>(const ScanRange&)> points;
    std::function<std::string(const ScanRange&)> ranges;
    std::function<Verdict(const std::vector<std::size_t>&, const CheckOptions&)> run;
    std::function<bool(const std::vector<std::size_t>&)> predict;
};

const std::vector<ScanFamily>& scan_families();
/// Family names accepted by scan_group: a family name, "table1", "table2" or "all".
std::vector<std::string> scan_group(const std::string& name);
const ScanFamily& find_scan_family(const std::string& name);

ScanReport scan_family(const std::string& name, const ScanRange& range, const ScanOptions& options = {});

/// Thread count from TEMPER_THREADS (at least 1).
unsigned default_threads();

/// Text grid (two or three parameters) or row listing.
std::string render_table(const ScanReport& report);

} // namespace temper
