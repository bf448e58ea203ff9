#include "doctest.h"
#include "temper/errors.hpp"
#include "temper/volume.hpp"

#include <cmath>

using namespace temper;

TEST_CASE("bodies") {
    auto b = ConvexBody::parse("box3");
    CHECK(b.dim() == 3);
    CHECK(b.exact_volume() == doctest::Approx(8.0));
    auto ball = ConvexBody::parse("ball2");
    CHECK(ball.exact_volume() == doctest::Approx(M_PI));
    CHECK(ball.contains(Eigen::Vector2d(0.6, 0.6)));
    CHECK_FALSE(ball.contains(Eigen::Vector2d(0.8, 0.8)));
    CHECK_THROWS_AS(ConvexBody::parse("cone3"), InputError);
    Eigen::MatrixXd normals(2, 2);
    normals << 1, 1, 1, -1;
    auto diamond = ConvexBody::symmetric_polytope(normals, Eigen::Vector2d(1, 1));
    CHECK(diamond.bounding_half_widths()(0) == doctest::Approx(1.0));
    CHECK(diamond.contains(Eigen::Vector2d(0.4, 0.4)));
    CHECK_FALSE(diamond.contains(Eigen::Vector2d(0.6, 0.6)));
    Eigen::MatrixXd one(1, 2);
    one << 1, 0;
    CHECK_THROWS(ConvexBody::symmetric_polytope(one, Eigen::VectorXd::Ones(1)));
}

TEST_CASE("matrix parsing and split exponentials") {
    auto a = parse_matrix("diag(1, -1)");
    CHECK(a(0, 0) == 1.0);
    CHECK(a(1, 1) == -1.0);
    auto m = parse_matrix("[[2, 1], [0, 1]]");
    auto e = split_exponential(m, 1.0);
    // upper triangular with distinct eigenvalues: exp has e^2, e on the diagonal
    CHECK(e(0, 0) == doctest::Approx(std::exp(2.0)));
    CHECK(e(1, 1) == doctest::Approx(std::exp(1.0)));
    CHECK(e(0, 1) == doctest::Approx(std::exp(2.0) - std::exp(1.0)));
    CHECK_THROWS_AS(split_exponential(parse_matrix("[[0, 1], [-1, 0]]"), 1.0), DomainError);
    CHECK_THROWS_AS(split_exponential(parse_matrix("[[0, 1], [0, 0]]"), 1.0), DomainError);
    CHECK_THROWS_AS(parse_matrix("[[1, 2], [3]]"), InputError);
    CHECK_THROWS_AS(parse_matrix("diag()"), InputError);
}

TEST_CASE("intersection volume of boxes has a closed form") {
    // diag(1,-1) maps the square to a 2e x 2/e rectangle; the overlap is 2 x 2/e
    auto est = mc_intersection_volume(parse_matrix("diag(1,-1)"), 1.0, ConvexBody::parse("box2"), 100000, 3);
    double exact = 4.0 / std::exp(1.0);
    CHECK(std::abs(est.value - exact) < 4 * est.stderr_ + 1e-12);
    auto same = mc_intersection_volume(parse_matrix("diag(1,-1)"), 1.0, ConvexBody::parse("box2"), 100000, 3, 4);
    CHECK(same.value == est.value);
    auto ball = mc_intersection_volume(parse_matrix("diag(0,0)"), 1.0, ConvexBody::parse("ball2"), 50000, 3);
    CHECK(std::abs(ball.value - M_PI) < 4 * ball.stderr_ + 1e-12);
}

TEST_CASE("decay slopes") {
    std::vector<double> ts;
    for (int i = 0; i <= 8; ++i) ts.push_back(0.5 * i);
    auto fit = verify_decay(parse_matrix("diag(1,-1)"), ConvexBody::parse("box2"), ts, 20000, 5);
    CHECK(fit.rho == doctest::Approx(1.0));
    CHECK(fit.pass);
    CHECK(std::abs(fit.slope + 1.0) < 0.05);
    auto ball = verify_decay(parse_matrix("diag(2,-1,-1)"), ConvexBody::parse("ball3"), ts, 50000, 5);
    CHECK(ball.rho == doctest::Approx(2.0));
    CHECK(ball.pass);
    // with a too tight tolerance the same fit is reported as failing
    auto strict = verify_decay(parse_matrix("diag(2,-1,-1)"), ConvexBody::parse("ball3"), ts, 50000, 5, 1e-9);
    CHECK_FALSE(strict.pass);
}

TEST_CASE("translate bound") {
    std::mt19937_64 rng(8);
    auto b = random_symmetric_polytope(3, 5, rng);
    auto b2 = random_symmetric_polytope(3, 5, rng);
    Eigen::VectorXd zero = Eigen::VectorXd::Zero(3);
    auto same = check_brunn_translate(b, b2, zero, 20000, 1);
    CHECK(same.left == doctest::Approx(same.right));
    CHECK(same.pass);
    auto suite = translate_suite(2, 4, 20, 10000, 9);
    CHECK(suite.trials == 20);
    CHECK(suite.failures.empty());
}
