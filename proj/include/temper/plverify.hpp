#pragma once

// Exact global-nonnegativity decision for homogeneous PL functions.
//
// A PL function is linear on every chamber of the arrangement of its
// abs-term hyperplanes, so it is nonnegative everywhere iff it is nonnegative
// on every extreme ray of every chamber. Chambers are produced by inserting
// the hyperplanes one at a time and splitting cones with the double
// description update; no floating point is involved.

#include "temper/core.hpp"

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

namespace temper {

struct Chamber {
    std::vector<std::int8_t> signs; ///< +1 / -1 per distinct hyperplane
    std::vector<IVec> rays;         ///< primitive integer extreme rays
    LinearForm linear_form;         ///< f restricted to the chamber (zero when no f)
};

/// Certificate of global nonnegativity.
///
/// Rays are stored once and referenced by index. When `orbits` is nonempty the
/// chambers only cover the fundamental domain {Y_i <= Y_j for consecutive i < j
/// in each orbit} of the coordinate permutations that fix f and the slice.
/// `lineality` spans directions along which every abs term and the linear
/// term vanish; chambers live in the orthogonal complement.
struct NonnegCertificate {
    PLFunction function;
    std::vector<LinearForm> hyperplanes;
    std::vector<IVec> rays;
    std::vector<Rational> ray_values;
    struct Cell {
        std::vector<std::int8_t> signs;
        std::vector<std::size_t> rays;
        LinearForm linear_form;
    };
    std::vector<Cell> chambers;
    std::vector<std::vector<std::size_t>> orbits;
    std::vector<IVec> lineality;
    /// Only one chamber of each antipodal pair is listed; requires f even.
    bool antipodal = false;
};

/// A direction with exactly negative value, scaled to unit max-norm.
struct Witness {
    PLFunction function;
    RVec direction;
    Rational value;
};

struct VerifyOptions {
    /// Only enumerate chambers on one side of the first hyperplane; sound when
    /// f is even, ignored otherwise or when `use_symmetry` is set.
    bool prune_antipodal = false;
    /// Restrict to the fundamental domain of the coordinate permutations that
    /// provably fix f and the slice.
    bool use_symmetry = false;
    /// Keep chambers and rays for a certificate; off saves memory in scans.
    bool keep_certificate = true;
};

struct VerifyStats {
    std::size_t dim = 0;
    std::size_t hyperplanes = 0;
    std::size_t chambers = 0;
    std::size_t ray_incidences = 0;
    std::size_t unique_rays = 0; ///< only counted when the certificate is kept
    std::size_t symmetry_orbits = 0;
};

struct VerifyResult {
    std::variant<NonnegCertificate, Witness> evidence;
    VerifyStats stats;

    bool nonnegative() const { return std::holds_alternative<NonnegCertificate>(evidence); }
    const NonnegCertificate& certificate() const { return std::get<NonnegCertificate>(evidence); }
    const Witness& witness() const { return std::get<Witness>(evidence); }
};

/// Deduplicated, sign-normalized forms of the abs terms, reduced modulo the
/// slice constraints; forms vanishing on the slice are dropped.
std::vector<LinearForm> distinct_hyperplanes(const PLFunction& f);

struct ChamberOptions {
    bool prune_antipodal = false;
    /// Half-spaces {g >= 0} restricting the enumeration.
    std::vector<LinearForm> domain;
};

/// Full-dimensional chambers of the arrangement inside the slice (modulo the
/// lineality space of the arrangement).
std::vector<Chamber> enumerate_chambers(const std::vector<LinearForm>& hyperplanes, const SpacePtr& space,
                                        const ChamberOptions& options = {});

VerifyResult is_nonnegative(const PLFunction& f, const VerifyOptions& options = {});

/// Coordinate orbits (size >= 2) of the group generated by the transpositions
/// that preserve both the slice and f.
std::vector<std::vector<std::size_t>> coordinate_symmetry_orbits(const PLFunction& f);

/// Brute-force check on the integer points of the max-norm sphere of radius
/// `resolution` inside the slice; returns the most negative point, if any.
std::optional<Witness> grid_oracle(const PLFunction& f, int resolution);

/// Independent replay through the core model only: every ray lies in the
/// slice, matches its chamber's sign pattern and recorded value, all values
/// are nonnegative, symmetry and lineality claims hold.
struct RecheckReport {
    bool ok = true;
    std::vector<std::string> problems;
};
RecheckReport recheck(const NonnegCertificate& cert);
RecheckReport recheck(const Witness& w);

} // namespace temper
