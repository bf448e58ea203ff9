#pragma once

// JSON documents for every exchanged object. Rationals are strings ("3",
// "-1/2"); integers are accepted where a rational is expected.

#include "temper/check.hpp"
#include "temper/core.hpp"
#include "temper/generators.hpp"
#include "temper/plverify.hpp"

#include "json.hpp"

#include <string>

namespace temper {

using Json = nlohmann::ordered_json;

/// Read-only cursor into a JSON document that remembers its path, so every
/// error names the offending location ("$.pair.h.weights[2].form[1]").
class JsonCursor {
public:
    JsonCursor(const Json& j, std::string path = "$") : j_(&j), path_(std::move(path)) {}

    const Json& json() const { return *j_; }
    const std::string& path() const { return path_; }

    bool has(const std::string& key) const;
    JsonCursor operator[](const std::string& key) const; ///< required member
    JsonCursor operator[](std::size_t i) const;
    std::size_t size() const; ///< array length; fails unless an array

    std::string str() const;
    bool boolean() const;
    std::int64_t integer() const;
    std::size_t natural() const;
    Rational rational() const;
    RVec rvec() const;
    IVec ivec() const;
    std::vector<std::size_t> naturals() const;

    [[noreturn]] void fail(const std::string& message) const;
    /// Rejects members other than `allowed`.
    void only(std::initializer_list<const char*> allowed) const;

private:
    const Json* j_;
    std::string path_;
};

Json parse_json_text(const std::string& text);
Json read_json_file(const std::string& path);

Json to_json(const Rational& r);
Json to_json(const LinearForm& f);
Json to_json(const TorusSpace& s);
Json to_json(const WeightModule& m);
Json to_json(const PairSpec& p);
Json to_json(const PLFunction& f);
Json to_json(const NonnegCertificate& c);
Json to_json(const Witness& w);
Json to_json(const VerifyStats& s);
Json to_json(const Verdict& v);
Json to_json(const ScanReport& r);
Json to_json(const RMatrix& m);
Json to_json(const MatrixPairInput& m);

SpacePtr space_from_json(const JsonCursor& c);
WeightModule module_from_json(const JsonCursor& c, const SpacePtr& space);
PairSpec pair_from_json(const JsonCursor& c);
PLFunction pl_from_json(const JsonCursor& c);
NonnegCertificate certificate_from_json(const JsonCursor& c);
Witness witness_from_json(const JsonCursor& c);
RMatrix matrix_from_json(const JsonCursor& c, std::size_t n);
MatrixPairInput matrices_from_json(const JsonCursor& c);

// --- spec files ------------------------------------------------------------------

inline constexpr const char* kSpecSchema = "temper-spec/1";
inline constexpr const char* kCertificateSchema = "temper-certificate/1";
inline constexpr const char* kVerdictSchema = "temper-verdict/1";

/// A spec file selects exactly one of "family", "tensor", "pair", "matrices".
struct SpecRequest {
    enum class Mode { Family, Tensor, Pair, Matrices } mode = Mode::Pair;
    std::optional<PairSpec> pair; ///< every mode except Tensor
    std::optional<TensorQuestion> tensor;
};

SpecRequest parse_spec(const Json& doc);
/// Evaluates a parsed request.
Verdict run_spec(const SpecRequest& request, const CheckOptions& options);

/// Family section of a spec file to a pair (exposed for tests).
PairSpec family_from_json(const JsonCursor& c);

} // namespace temper
