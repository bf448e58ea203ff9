#include "temper/volume.hpp"

#include "temper/errors.hpp"

#include "json.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

namespace temper {

// --- bodies --------------------------------------------------------------------------

ConvexBody ConvexBody::box(const Eigen::VectorXd& half_widths) {
    if (half_widths.size() == 0 || (half_widths.array() <= 0).any()) throw InputError("box half-widths must be positive");
    ConvexBody b;
    b.kind_ = Kind::Box;
    b.dim_ = static_cast<std::size_t>(half_widths.size());
    b.bbox_ = half_widths;
    return b;
}

ConvexBody ConvexBody::cube(std::size_t dim, double half_width) {
    return box(Eigen::VectorXd::Constant(static_cast<Eigen::Index>(dim), half_width));
}

ConvexBody ConvexBody::ball(std::size_t dim, double radius) {
    if (dim == 0 || radius <= 0) throw InputError("ball needs positive dimension and radius");
    ConvexBody b;
    b.kind_ = Kind::Ball;
    b.dim_ = dim;
    b.radius_ = radius;
    b.bbox_ = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(dim), radius);
    return b;
}

ConvexBody ConvexBody::symmetric_polytope(const Eigen::MatrixXd& normals, const Eigen::VectorXd& bounds) {
    const auto d = normals.cols(), m = normals.rows();
    if (d == 0 || m != bounds.size() || (bounds.array() <= 0).any())
        throw InputError("polytope needs one positive bound per normal");
    Eigen::FullPivLU<Eigen::MatrixXd> lu(normals);
    if (lu.rank() < d) throw InputError("polytope normals do not span; the body is unbounded");
    ConvexBody b;
    b.kind_ = Kind::Polytope;
    b.dim_ = static_cast<std::size_t>(d);
    b.normals_ = normals;
    b.bounds_ = bounds;
    b.bbox_ = Eigen::VectorXd::Zero(d);

    // Vertices: d active slabs with a choice of side each.
    std::vector<int> pick(static_cast<std::size_t>(d));
    std::iota(pick.begin(), pick.end(), 0);
    while (true) {
        Eigen::MatrixXd sub(d, d);
        for (Eigen::Index i = 0; i < d; ++i) sub.row(i) = normals.row(pick[static_cast<std::size_t>(i)]);
        Eigen::FullPivLU<Eigen::MatrixXd> slu(sub);
        if (slu.rank() == d) {
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << d); ++mask) {
                Eigen::VectorXd rhs(d);
                for (Eigen::Index i = 0; i < d; ++i)
                    rhs(i) = ((mask >> i) & 1U ? -1.0 : 1.0) * bounds(pick[static_cast<std::size_t>(i)]);
                Eigen::VectorXd x = slu.solve(rhs);
                if (((normals * x).cwiseAbs() - bounds).maxCoeff() <= 1e-9)
                    b.bbox_ = b.bbox_.cwiseMax(x.cwiseAbs());
            }
        }
        Eigen::Index i = d - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == m - d + i) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (Eigen::Index k = i + 1; k < d; ++k) pick[static_cast<std::size_t>(k)] = pick[static_cast<std::size_t>(k - 1)] + 1;
    }
    return b;
}

ConvexBody ConvexBody::parse(const std::string& name) {
    auto dim_after = [&](std::size_t prefix) -> std::size_t {
        const std::string rest = name.substr(prefix);
        if (rest.empty() || rest.size() > 2 || !std::all_of(rest.begin(), rest.end(), ::isdigit))
            throw InputError("body \"" + name + "\": expected a dimension suffix such as box3");
        std::size_t d = std::stoul(rest);
        if (d < 1 || d > 12) throw InputError("body \"" + name + "\": dimension must be between 1 and 12");
        return d;
    };
    if (name.rfind("box", 0) == 0) return cube(dim_after(3));
    if (name.rfind("ball", 0) == 0) return ball(dim_after(4));
    throw InputError("unknown body \"" + name + "\" (expected boxN or ballN)");
}

bool ConvexBody::contains(const Eigen::VectorXd& x) const {
    switch (kind_) {
    case Kind::Box:
        return (x.cwiseAbs() - bbox_).maxCoeff() <= 0;
    case Kind::Ball:
        return x.squaredNorm() <= radius_ * radius_;
    case Kind::Polytope:
        return ((normals_ * x).cwiseAbs() - bounds_).maxCoeff() <= 0;
    }
    return false;
}

double ConvexBody::exact_volume() const {
    switch (kind_) {
    case Kind::Box:
        return (2 * bbox_).prod();
    case Kind::Ball: {
        const double d = static_cast<double>(dim_);
        return std::pow(M_PI, d / 2) / std::tgamma(d / 2 + 1) * std::pow(radius_, d);
    }
    case Kind::Polytope:
        return -1;
    }
    return -1;
}

std::string ConvexBody::describe() const {
    switch (kind_) {
    case Kind::Box:
        return "box" + std::to_string(dim_);
    case Kind::Ball:
        return "ball" + std::to_string(dim_);
    case Kind::Polytope:
        return "polytope" + std::to_string(dim_) + "(" + std::to_string(normals_.rows()) + " slabs)";
    }
    return "";
}

// --- split exponentials ---------------------------------------------------------------

namespace {

struct SplitDecomposition {
    Eigen::MatrixXd vectors;
    Eigen::MatrixXd inverse;
    Eigen::VectorXd values;
};

SplitDecomposition decompose(const Eigen::MatrixXd& a) {
    if (a.rows() != a.cols() || a.rows() == 0) throw InputError("matrix must be square and nonempty");
    if (!a.allFinite()) throw InputError("matrix has non-finite entries");
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    Eigen::EigenSolver<Eigen::MatrixXd> es(a);
    if (es.info() != Eigen::Success) throw DomainError("non-split direction: eigen decomposition failed");
    SplitDecomposition d;
    const Eigen::VectorXcd ev = es.eigenvalues();
    if ((ev.imag().cwiseAbs().array() > 1e-9 * scale).any())
        throw DomainError("non-split direction: the matrix has non-real eigenvalues");
    d.values = ev.real();
    d.vectors = es.eigenvectors().real();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(d.vectors);
    const auto sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 1e-8 * sv(0))
        throw DomainError("non-split direction: the matrix is not diagonalizable (nilpotent part)");
    d.inverse = d.vectors.inverse();
    if ((d.vectors * d.values.asDiagonal() * d.inverse - a).cwiseAbs().maxCoeff() > 1e-8 * scale)
        throw DomainError("non-split direction: the matrix is not diagonalizable (nilpotent part)");
    return d;
}

std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    auto lo = [](std::uint64_t x) { return static_cast<std::uint32_t>(x); };
    auto hi = [](std::uint64_t x) { return static_cast<std::uint32_t>(x >> 32); };
    std::seed_seq seq{lo(seed), hi(seed), lo(a), hi(a), lo(b), hi(b)};
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

constexpr std::uint64_t kChunks = 16;

/// Counts hits of `inside` among `samples` uniform points of the box
/// [-w, w], in kChunks independently seeded chunks.
template <class Inside>
std::uint64_t count_hits(const Eigen::VectorXd& w, std::uint64_t samples, std::uint64_t seed, std::uint64_t salt,
                         unsigned threads, Inside inside) {
    std::vector<std::uint64_t> hits(kChunks, 0);
    auto run_chunk = [&](std::uint64_t c) {
        std::mt19937_64 rng(chunk_seed(seed, salt, c));
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        const std::uint64_t n = samples / kChunks + (c < samples % kChunks ? 1 : 0);
        Eigen::VectorXd x(w.size());
        std::uint64_t h = 0;
        for (std::uint64_t s = 0; s < n; ++s) {
            for (Eigen::Index i = 0; i < w.size(); ++i) x(i) = u(rng) * w(i);
            h += inside(x) ? 1 : 0;
        }
        hits[c] = h;
    };
    if (threads <= 1) {
        for (std::uint64_t c = 0; c < kChunks; ++c) run_chunk(c);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (std::uint64_t c = t; c < kChunks; c += threads) run_chunk(c);
            });
        for (auto& th : pool) th.join();
    }
    return std::accumulate(hits.begin(), hits.end(), std::uint64_t{0});
}

VolumeEstimate estimate(std::uint64_t hits, std::uint64_t samples, double box_volume) {
    VolumeEstimate e;
    e.hits = hits;
    e.samples = samples;
    e.box_volume = box_volume;
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    e.value = p * box_volume;
    e.stderr_ = box_volume * std::sqrt(p * (1 - p) / static_cast<double>(samples));
    return e;
}

} // namespace

Eigen::MatrixXd split_exponential(const Eigen::MatrixXd& a, double t) {
    SplitDecomposition d = decompose(a);
    Eigen::VectorXd e = (t * d.values).array().exp();
    Eigen::MatrixXd m = d.vectors * e.asDiagonal() * d.inverse;
    if (!m.allFinite()) throw DomainError("matrix exponential is not finite at t = " + std::to_string(t));
    return m;
}

Eigen::VectorXd split_eigenvalues(const Eigen::MatrixXd& a) { return decompose(a).values; }

VolumeEstimate mc_intersection_volume(const Eigen::MatrixXd& a, double t, const ConvexBody& c, std::uint64_t samples,
                                      std::uint64_t seed, unsigned threads) {
    if (static_cast<std::size_t>(a.rows()) != c.dim()) throw InputError("matrix and body dimensions differ");
    if (samples == 0) throw InputError("need at least one sample");
    const Eigen::MatrixXd m = split_exponential(a, t);
    const Eigen::MatrixXd minv = split_exponential(a, -t);
    const Eigen::VectorXd& w = c.bounding_half_widths();
    // e^{tA} C lies in the box with half-widths |M| w.
    const Eigen::VectorXd box = w.cwiseMin(m.cwiseAbs() * w);
    const double box_volume = (2 * box).prod();
    const std::uint64_t salt = std::bit_cast<std::uint64_t>(t);
    std::uint64_t hits = count_hits(box, samples, seed, salt, threads, [&](const Eigen::VectorXd& x) {
        return c.contains(x) && c.contains(minv * x);
    });
    return estimate(hits, samples, box_volume);
}

DecayFit verify_decay(const Eigen::MatrixXd& a, const ConvexBody& c, const std::vector<double>& times,
                      std::uint64_t samples, std::uint64_t seed, double tolerance, unsigned threads) {
    if (times.size() < 3) throw InputError("need at least three sample times");
    DecayFit fit;
    fit.tolerance = tolerance;
    const Eigen::VectorXd ev = split_eigenvalues(a);
    fit.trace = ev.sum();
    fit.rho = 0.5 * ev.cwiseAbs().sum();
    fit.predicted_slope = -fit.rho;

    std::vector<double> sorted = times;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t tail = sorted.size() / 3;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double t = sorted[i];
        VolumeEstimate e = mc_intersection_volume(a, t, c, samples, seed, threads);
        if (e.hits < 100) {
            fit.dropped_t.push_back(t);
            continue;
        }
        if (i < tail) ++fit.tail_start;
        fit.t.push_back(t);
        fit.log_volume.push_back(std::log(e.value) - t * fit.trace / 2);
        fit.log_stderr.push_back(e.value > 0 ? e.stderr_ / e.value : 0.0);
    }
    const std::size_t n = fit.t.size() - fit.tail_start;
    if (n < 2)
        throw DomainError("too few sample times survive: the intersection volume falls below the Monte-Carlo floor; shrink the t range");

    double mt = 0, my = 0;
    for (std::size_t i = fit.tail_start; i < fit.t.size(); ++i) {
        mt += fit.t[i];
        my += fit.log_volume[i];
    }
    mt /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double stt = 0, sty = 0;
    for (std::size_t i = fit.tail_start; i < fit.t.size(); ++i) {
        stt += (fit.t[i] - mt) * (fit.t[i] - mt);
        sty += (fit.t[i] - mt) * (fit.log_volume[i] - my);
    }
    fit.slope = sty / stt;
    fit.intercept = my - fit.slope * mt;
    if (n > 2) {
        double sse = 0;
        for (std::size_t i = fit.tail_start; i < fit.t.size(); ++i) {
            double r = fit.log_volume[i] - fit.intercept - fit.slope * fit.t[i];
            sse += r * r;
        }
        fit.slope_stderr = std::sqrt(sse / static_cast<double>(n - 2) / stt);
    }
    fit.pass = std::abs(fit.slope - fit.predicted_slope) <= tolerance;
    return fit;
}

void write_gnuplot(const DecayFit& fit, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << "# t log_volume stderr (trace corrected); fitted slope " << fit.slope << ", predicted " << fit.predicted_slope
        << "\n";
    for (std::size_t i = 0; i < fit.t.size(); ++i)
        out << fit.t[i] << " " << fit.log_volume[i] << " " << fit.log_stderr[i] << "\n";
}

// --- translate bound --------------------------------------------------------------------

TranslateCheck check_brunn_translate(const ConvexBody& b, const ConvexBody& b2, const Eigen::VectorXd& v,
                                     std::uint64_t samples, std::uint64_t seed) {
    if (b.dim() != b2.dim() || static_cast<std::size_t>(v.size()) != b.dim())
        throw InputError("bodies and translation must share a dimension");
    // Both intersections lie inside B'; one sample stream serves both sides.
    const Eigen::VectorXd& w = b2.bounding_half_widths();
    const double box_volume = (2 * w).prod();
    std::uint64_t left = 0;
    std::uint64_t right = count_hits(w, samples, seed, 0, 1, [&](const Eigen::VectorXd& x) {
        if (!b2.contains(x)) return false;
        left += b.contains(x - v) ? 1 : 0;
        return b.contains(x);
    });
    TranslateCheck r;
    VolumeEstimate l = estimate(left, samples, box_volume), rr = estimate(right, samples, box_volume);
    r.left = l.value;
    r.left_stderr = l.stderr_;
    r.right = rr.value;
    r.right_stderr = rr.stderr_;
    r.pass = r.left <= r.right + 3 * std::sqrt(r.left_stderr * r.left_stderr + r.right_stderr * r.right_stderr);
    return r;
}

ConvexBody random_symmetric_polytope(std::size_t dim, std::size_t facets, std::mt19937_64& rng) {
    if (facets < dim) throw InputError("a bounded polytope needs at least dim slabs");
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.5, 1.5);
    const auto d = static_cast<Eigen::Index>(dim), m = static_cast<Eigen::Index>(facets);
    while (true) {
        Eigen::MatrixXd a(m, d);
        Eigen::VectorXd b(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            for (Eigen::Index j = 0; j < d; ++j) a(i, j) = g(rng);
            a.row(i).normalize();
            b(i) = u(rng);
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
        if (svd.singularValues()(d - 1) > 0.2) return ConvexBody::symmetric_polytope(a, b);
    }
}

TranslateSuite translate_suite(std::size_t min_dim, std::size_t max_dim, std::size_t trials, std::uint64_t samples,
                               std::uint64_t seed) {
    if (min_dim < 1 || max_dim < min_dim) throw InputError("invalid dimension range");
    TranslateSuite s;
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < trials; ++k) {
        const std::size_t d = min_dim + k % (max_dim - min_dim + 1);
        std::uniform_int_distribution<std::size_t> nf(d, d + 3);
        ConvexBody b = random_symmetric_polytope(d, nf(rng), rng);
        ConvexBody b2 = random_symmetric_polytope(d, nf(rng), rng);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        Eigen::VectorXd v(static_cast<Eigen::Index>(d));
        for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = u(rng) * b.bounding_half_widths()(i);
        TranslateCheck c = check_brunn_translate(b, b2, v, samples, rng());
        ++s.trials;
        if (c.pass) ++s.passes;
        else s.failures.push_back(k);
    }
    return s;
}

Eigen::MatrixXd parse_matrix(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.rfind("diag(", 0) == 0 && s.back() == ')') {
        std::vector<double> v;
        std::string inner = s.substr(5, s.size() - 6), item;
        std::stringstream ss(inner);
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t pos = 0;
                v.push_back(std::stod(item, &pos));
                if (pos != item.size()) throw std::invalid_argument(item);
            } catch (const std::exception&) {
                throw InputError("matrix \"" + text + "\": bad diagonal entry \"" + item + "\"");
            }
        }
        if (v.empty()) throw InputError("matrix \"" + text + "\": empty diagonal");
        Eigen::VectorXd d = Eigen::Map<Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
        return d.asDiagonal();
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(s);
    } catch (const std::exception&) {
        throw InputError("matrix \"" + text + "\": expected diag(...) or [[...],...]");
    }
    if (!j.is_array() || j.empty()) throw InputError("matrix \"" + text + "\": expected a nonempty list of rows");
    const auto n = static_cast<Eigen::Index>(j.size());
    Eigen::MatrixXd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n)
            throw InputError("matrix \"" + text + "\": rows must have " + std::to_string(n) + " entries");
        for (Eigen::Index k = 0; k < n; ++k) {
            if (!row[static_cast<std::size_t>(k)].is_number()) throw InputError("matrix \"" + text + "\": non-numeric entry");
            m(i, k) = row[static_cast<std::size_t>(k)].get<double>();
        }
    }
    return m;
}

} // namespace temper
