#pragma once

// Monte-Carlo checks of the volume estimates behind the criterion: decay of
// vol(e^{tA} C cap C) along a split direction and the translate bound for
// symmetric convex bodies. Floating point throughout; nothing here feeds the
// exact decision.

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace temper {

class ConvexBody {
public:
    enum class Kind { Box, Ball, Polytope };

    static ConvexBody box(const Eigen::VectorXd& half_widths);
    static ConvexBody cube(std::size_t dim, double half_width = 1.0);
    static ConvexBody ball(std::size_t dim, double radius = 1.0);
    /// {x : |a_j . x| <= b_j for every row a_j of `normals`}; must be bounded.
    static ConvexBody symmetric_polytope(const Eigen::MatrixXd& normals, const Eigen::VectorXd& bounds);
    /// "box2", "box3", "ball3", ...: unit cube [-1,1]^d or unit ball.
    static ConvexBody parse(const std::string& name);

    Kind kind() const { return kind_; }
    std::size_t dim() const { return dim_; }
    bool contains(const Eigen::VectorXd& x) const;
    /// Half-widths of the smallest origin-centred box containing the body.
    const Eigen::VectorXd& bounding_half_widths() const { return bbox_; }
    /// Closed form for boxes and balls; negative for polytopes.
    double exact_volume() const;
    std::string describe() const;

private:
    Kind kind_ = Kind::Box;
    std::size_t dim_ = 0;
    double radius_ = 0;
    Eigen::MatrixXd normals_;
    Eigen::VectorXd bounds_;
    Eigen::VectorXd bbox_;
};

struct VolumeEstimate {
    double value = 0;
    double stderr_ = 0;
    std::uint64_t hits = 0;
    std::uint64_t samples = 0;
    double box_volume = 0;
};

/// e^{tA} for a diagonalizable matrix with real spectrum. Throws DomainError
/// ("non-split direction") otherwise, and when the result is not finite.
Eigen::MatrixXd split_exponential(const Eigen::MatrixXd& a, double t);
/// Real eigenvalues of a split matrix (same preconditions).
Eigen::VectorXd split_eigenvalues(const Eigen::MatrixXd& a);

/// Hit-or-miss estimate of vol(e^{tA} C cap C), sampling uniformly in the
/// intersection of the bounding boxes of C and e^{tA} C. Samples are split in
/// fixed chunks with derived seeds, so results do not depend on `threads`.
VolumeEstimate mc_intersection_volume(const Eigen::MatrixXd& a, double t, const ConvexBody& c, std::uint64_t samples,
                                      std::uint64_t seed, unsigned threads = 1);

struct DecayFit {
    std::vector<double> t;
    std::vector<double> log_volume; ///< log(e^{-t Tr(A)/2} vol)
    std::vector<double> log_stderr;
    std::vector<double> dropped_t;  ///< points with too few hits
    std::size_t tail_start = 0;     ///< first index used in the fit
    double slope = 0;
    double intercept = 0;
    double slope_stderr = 0;
    double rho = 0;   ///< 1/2 sum |lambda_i|
    double trace = 0;
    double predicted_slope = 0; ///< -rho
    double tolerance = 0.1;
    bool pass = false;
};

/// Fits the slope of the trace-corrected log volume over the last two thirds
/// of `times` and compares it with -rho(A).
DecayFit verify_decay(const Eigen::MatrixXd& a, const ConvexBody& c, const std::vector<double>& times,
                      std::uint64_t samples, std::uint64_t seed, double tolerance = 0.1, unsigned threads = 1);

/// Writes "t log_volume stderr" rows for gnuplot.
void write_gnuplot(const DecayFit& fit, const std::string& path);

struct TranslateCheck {
    double left = 0, left_stderr = 0;   ///< vol((B + v) cap B')
    double right = 0, right_stderr = 0; ///< vol(B cap B')
    bool pass = false;
};

TranslateCheck check_brunn_translate(const ConvexBody& b, const ConvexBody& b2, const Eigen::VectorXd& v,
                                     std::uint64_t samples, std::uint64_t seed);

/// Random bounded symmetric polytope with `facets` slab pairs.
ConvexBody random_symmetric_polytope(std::size_t dim, std::size_t facets, std::mt19937_64& rng);

struct TranslateSuite {
    std::size_t trials = 0;
    std::size_t passes = 0;
    std::vector<std::size_t> failures;
};

/// Random polytope pairs in dims 2..max_dim with random translations.
TranslateSuite translate_suite(std::size_t min_dim, std::size_t max_dim, std::size_t trials, std::uint64_t samples,
                               std::uint64_t seed);

/// Parses "diag(1,-1)" or a JSON-style nested list "[[1,0],[0,-1]]".
Eigen::MatrixXd parse_matrix(const std::string& text);

} // namespace temper
