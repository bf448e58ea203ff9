#include "temper/generators.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace temper {

namespace {

std::string block_label(std::size_t block, std::size_t index, std::size_t num_blocks) {
    static const char* letters[] = {"x", "y", "z", "w", "u", "v"};
    std::string base = num_blocks <= 6 ? letters[block] : "b" + std::to_string(block + 1) + "_";
    return base + std::to_string(index + 1);
}

std::string join(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

WeightList std_weights(std::size_t offset, std::size_t rank, std::size_t zeros, std::size_t dim) {
    WeightList v;
    for (std::size_t a = 0; a < rank; ++a) {
        v.push_back({LinearForm::unit(dim, offset + a), 1});
        v.push_back({-LinearForm::unit(dim, offset + a), 1});
    }
    if (zeros > 0) v.push_back({LinearForm::zero(dim), static_cast<std::int64_t>(zeros)});
    return v;
}

WeightList merged(const WeightList& v) {
    std::map<LinearForm, std::int64_t> m;
    for (const auto& w : v) m[w.form] = checked::add(m[w.form], w.mult);
    WeightList out;
    for (auto& [f, k] : m) out.push_back({f, k});
    return out;
}

WeightList concat(WeightList a, const WeightList& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

SpacePtr free_space(std::size_t k, const std::string& prefix = "t") {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < k; ++i) labels.push_back(prefix + std::to_string(i + 1));
    return make_space(k, {}, std::move(labels));
}

PairSpec make_pair(const SpacePtr& space, const WeightList& h, const WeightList& q,
                   std::map<std::string, std::string> metadata) {
    PairSpec spec;
    spec.h_module = WeightModule(space, h, "h");
    spec.g_module = WeightModule(space, q, "g/h");
    spec.metadata = std::move(metadata);
    return spec;
}

std::int64_t choose2(std::int64_t m) { return m * (m - 1) / 2; }

} // namespace

// --- block patterns ----------------------------------------------------------

std::size_t BlockPattern::n() const { return std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}); }

BlockPattern BlockPattern::normalized() const {
    if (kinds.size() != sizes.size()) throw InputError("block pattern: one kind per block required");
    BlockPattern out;
    std::vector<std::size_t> remap(sizes.size(), SIZE_MAX);
    for (std::size_t b = 0; b < sizes.size(); ++b)
        if (sizes[b] > 0) {
            remap[b] = out.sizes.size();
            out.sizes.push_back(sizes[b]);
            out.kinds.push_back(kinds[b]);
        }
    for (auto [i, j] : upper) {
        if (i >= sizes.size() || j >= sizes.size()) throw InputError("block pattern: upper block index out of range");
        if (remap[i] != SIZE_MAX && remap[j] != SIZE_MAX) out.upper.insert({remap[i], remap[j]});
    }
    return out;
}

void BlockPattern::validate() const {
    if (kinds.size() != sizes.size()) throw InputError("block pattern: one kind per block required");
    for (auto [i, j] : upper) {
        if (i >= j || j >= sizes.size())
            throw InputError("block pattern: upper blocks must satisfy i < j < number of blocks");
    }
    for (auto [i, j] : upper)
        for (auto [j2, k] : upper)
            if (j == j2 && !upper.count({i, k}))
                throw DomainError("block pattern is not a subalgebra: blocks (" + std::to_string(i + 1) + "," +
                                  std::to_string(j + 1) + ") and (" + std::to_string(j + 1) + "," + std::to_string(k + 1) +
                                  ") bracket into the missing block (" + std::to_string(i + 1) + "," +
                                  std::to_string(k + 1) + ")");
}

std::vector<std::size_t> BlockPattern::block_of() const {
    std::vector<std::size_t> out;
    for (std::size_t b = 0; b < sizes.size(); ++b) out.insert(out.end(), sizes[b], b);
    return out;
}

bool BlockPattern::in_h(std::size_t a, std::size_t b) const {
    auto blocks = block_of();
    std::size_t ba = blocks.at(a), bb = blocks.at(b);
    if (a == b) return false;
    if (ba == bb) return kinds[ba] == BlockKind::Full;
    return ba < bb && upper.count({ba, bb});
}

SpacePtr sl_block_space(const BlockPattern& pattern, TorusMode mode) {
    const BlockPattern p = pattern.normalized();
    const std::size_t n = p.n();
    std::vector<LinearForm> cons;
    std::vector<std::string> labels;
    std::size_t start = 0;
    bool any_full = false;
    for (std::size_t b = 0; b < p.sizes.size(); ++b) {
        for (std::size_t i = 0; i < p.sizes[b]; ++i) labels.push_back(block_label(b, i, p.sizes.size()));
        if (p.kinds[b] == BlockKind::Identity) {
            for (std::size_t i = 0; i < p.sizes[b]; ++i) cons.push_back(LinearForm::unit(n, start + i));
        } else {
            any_full = true;
            if (mode == TorusMode::Derived) {
                RVec c(n);
                for (std::size_t i = 0; i < p.sizes[b]; ++i) c[start + i] = 1;
                cons.emplace_back(std::move(c));
            }
        }
        start += p.sizes[b];
    }
    if (mode == TorusMode::FullDiagonal && any_full) cons.emplace_back(RVec(n, Rational(1)));
    return make_space(n, std::move(cons), std::move(labels));
}

PairSpec build_sl_block(const BlockPattern& pattern, TorusMode mode) {
    const BlockPattern p = pattern.normalized();
    p.validate();
    const std::size_t n = p.n();
    if (n == 0) throw DomainError("block pattern has no rows");
    SpacePtr space = sl_block_space(p, mode);

    WeightList h, q;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b) continue;
            (p.in_h(a, b) ? h : q).push_back({LinearForm::difference(n, a, b), 1});
        }
    std::int64_t h_zero = 0;
    std::int64_t full_total = 0;
    bool any_full = false;
    for (std::size_t b = 0; b < p.sizes.size(); ++b)
        if (p.kinds[b] == BlockKind::Full) {
            any_full = true;
            full_total += static_cast<std::int64_t>(p.sizes[b]);
            if (mode == TorusMode::Derived) h_zero += static_cast<std::int64_t>(p.sizes[b]) - 1;
        }
    if (mode == TorusMode::FullDiagonal && any_full) h_zero = full_total - 1;
    const std::int64_t q_zero = static_cast<std::int64_t>(n) - 1 - h_zero;
    if (h_zero > 0) h.push_back({LinearForm::zero(n), h_zero});
    if (q_zero > 0) q.push_back({LinearForm::zero(n), q_zero});

    std::string kinds;
    for (auto k : p.kinds) kinds += (k == BlockKind::Full ? '*' : 'I');
    std::string upper;
    for (auto [i, j] : p.upper) upper += "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
    return make_pair(space, h, q,
                     {{"family", "sl_block"},
                      {"sizes", join(p.sizes)},
                      {"diagonal", kinds},
                      {"upper", upper},
                      {"torus", mode == TorusMode::Derived ? "derived" : "full"}});
}

LeviDecomposition levi_decomposition(const BlockPattern& pattern, TorusMode mode) {
    const BlockPattern p = pattern.normalized();
    p.validate();
    const std::size_t n = p.n();
    SpacePtr space = sl_block_space(p, mode);
    auto blocks = p.block_of();
    WeightList s, v, ls, uv;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            if (a == b) continue;
            LinearForm f = LinearForm::difference(n, a, b);
            bool h = p.in_h(a, b);
            if (blocks[a] == blocks[b]) (h ? s : ls).push_back({f, 1});
            else if (blocks[a] < blocks[b]) (h ? v : uv).push_back({f, 1});
        }
    PairSpec full = build_sl_block(p, mode);
    std::int64_t h_zero = full.h_module.multiplicity(LinearForm::zero(n));
    std::int64_t l_zero = static_cast<std::int64_t>(n) - 1 - h_zero;
    if (h_zero > 0) s.push_back({LinearForm::zero(n), h_zero});
    if (l_zero > 0) ls.push_back({LinearForm::zero(n), l_zero});
    return {WeightModule(space, s, "s"), WeightModule(space, v, "v"), WeightModule(space, ls, "l/s"),
            WeightModule(space, uv, "u/v")};
}

// --- classical families --------------------------------------------------------

WeightList exterior_square(const WeightList& v0) {
    WeightList v = merged(v0), out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i].mult >= 2) out.push_back({Rational(2) * v[i].form, choose2(v[i].mult)});
        for (std::size_t j = i + 1; j < v.size(); ++j)
            out.push_back({v[i].form + v[j].form, checked::mul(v[i].mult, v[j].mult)});
    }
    return merged(out);
}

WeightList symmetric_square(const WeightList& v0) {
    WeightList v = merged(v0), out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back({Rational(2) * v[i].form, choose2(v[i].mult + 1)});
        for (std::size_t j = i + 1; j < v.size(); ++j)
            out.push_back({v[i].form + v[j].form, checked::mul(v[i].mult, v[j].mult)});
    }
    return merged(out);
}

WeightList tensor_product(const WeightList& a, const WeightList& b) {
    WeightList out;
    for (const auto& x : a)
        for (const auto& y : b) out.push_back({x.form + y.form, checked::mul(x.mult, y.mult)});
    return merged(out);
}

WeightList remove_zero_weights(WeightList v, std::int64_t count) {
    v = merged(v);
    if (count == 0) return v;
    for (auto it = v.begin(); it != v.end(); ++it)
        if (it->form.is_zero()) {
            if (it->mult < count) break;
            it->mult -= count;
            if (it->mult == 0) v.erase(it);
            return v;
        }
    throw DomainError("not enough zero weights to remove");
}

PairSpec build_product_in_sl(const std::vector<std::size_t>& parts) {
    if (parts.size() < 2) throw DomainError("product embedding needs at least two parts");
    if (std::any_of(parts.begin(), parts.end(), [](std::size_t x) { return x == 0; }))
        throw InputError("product embedding: parts must be positive");
    BlockPattern p{parts, std::vector<BlockKind>(parts.size(), BlockKind::Full), {}};
    PairSpec spec = build_sl_block(p);
    spec.metadata = {{"family", "product_sl"}, {"parts", join(parts)}};
    return spec;
}

PairSpec build_product_in_sp(const std::vector<std::size_t>& parts) {
    if (parts.size() < 2) throw DomainError("product embedding needs at least two parts");
    if (std::any_of(parts.begin(), parts.end(), [](std::size_t x) { return x == 0; }))
        throw InputError("product embedding: parts must be positive");
    const std::size_t n = std::accumulate(parts.begin(), parts.end(), std::size_t{0});
    SpacePtr space = free_space(n);
    std::vector<WeightList> stdreps;
    std::size_t offset = 0;
    for (auto k : parts) {
        stdreps.push_back(std_weights(offset, k, 0, n));
        offset += k;
    }
    WeightList h, q;
    for (std::size_t i = 0; i < stdreps.size(); ++i) {
        h = concat(h, symmetric_square(stdreps[i]));
        for (std::size_t j = i + 1; j < stdreps.size(); ++j) q = concat(q, tensor_product(stdreps[i], stdreps[j]));
    }
    return make_pair(space, h, q, {{"family", "product_sp"}, {"parts", join(parts)}});
}

PairSpec build_so_pair(std::size_t p1, std::size_t q1, std::size_t p2, std::size_t q2) {
    const std::size_t k1 = std::min(p1, q1), k2 = std::min(p2, q2);
    const std::size_t k = k1 + k2;
    SpacePtr space = free_space(k);
    WeightList v1 = std_weights(0, k1, std::max(p1, q1) - k1, k);
    WeightList v2 = std_weights(k1, k2, std::max(p2, q2) - k2, k);
    WeightList h = concat(exterior_square(v1), exterior_square(v2));
    WeightList q = tensor_product(v1, v2);
    return make_pair(space, h, q,
                     {{"family", "so_pair"},
                      {"params", join({p1, q1, p2, q2})}});
}

PairSpec build_so_in_sl(std::size_t p, std::size_t q) {
    if (p + q < 2) throw InputError("so(p,q) in sl(p+q) needs p + q >= 2");
    const std::size_t k = std::min(p, q);
    SpacePtr space = free_space(k);
    WeightList v = std_weights(0, k, std::max(p, q) - k, k);
    return make_pair(space, exterior_square(v), remove_zero_weights(symmetric_square(v), 1),
                     {{"family", "so_in_sl"}, {"params", join({p, q})}});
}

PairSpec build_sp_in_sl(std::size_t m) {
    if (m < 1) throw InputError("sp(m) in sl(2m) needs m >= 1");
    SpacePtr space = free_space(m);
    WeightList v = std_weights(0, m, 0, m);
    return make_pair(space, symmetric_square(v), remove_zero_weights(exterior_square(v), 1),
                     {{"family", "sp_in_sl"}, {"params", std::to_string(m)}});
}

PairSpec realify(const PairSpec& spec) {
    PairSpec out = spec;
    out.h_module = spec.h_module.scaled(2);
    out.g_module = spec.g_module.scaled(2);
    if (spec.v_module) out.v_module = spec.v_module->scaled(2);
    out.metadata["realified"] = "true";
    return out;
}

PairSpec build_complex_product(ComplexFamily family, std::size_t m, std::size_t n) {
    if (m < 1 || n < 1) throw InputError("complex product: m, n must be positive");
    std::vector<std::size_t> parts{std::max(m, n), std::min(m, n)};
    PairSpec spec;
    std::string name;
    switch (family) {
    case ComplexFamily::SL:
        spec = build_product_in_sl(parts);
        name = "complex_sl";
        break;
    case ComplexFamily::SP:
        spec = build_product_in_sp(parts);
        name = "complex_sp";
        break;
    case ComplexFamily::SO: {
        const std::size_t k1 = m / 2, k2 = n / 2, k = k1 + k2;
        SpacePtr space = free_space(k);
        WeightList v1 = std_weights(0, k1, m % 2, k);
        WeightList v2 = std_weights(k1, k2, n % 2, k);
        spec = make_pair(space, concat(exterior_square(v1), exterior_square(v2)), tensor_product(v1, v2), {});
        name = "complex_so";
        break;
    }
    }
    spec = realify(spec);
    spec.metadata["family"] = name;
    spec.metadata["params"] = join({m, n});
    return spec;
}

// --- matrix mode -----------------------------------------------------------------

bool is_bracket_closed(const std::vector<RMatrix>& basis) {
    if (basis.empty()) return true;
    Span span(basis.front().rows * basis.front().cols);
    for (const auto& b : basis) span.add(flatten(b));
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = i + 1; j < basis.size(); ++j)
            if (!span.contains(flatten(commutator(basis[i], basis[j])))) return false;
    return true;
}

PairSpec extract_weights(const MatrixPairInput& in) {
    const std::size_t n = in.ambient_dim;
    auto check_shape = [&](const RMatrix& m, const char* what) {
        if (m.rows != n || m.cols != n)
            throw InputError(std::string(what) + " matrix is not " + std::to_string(n) + "x" + std::to_string(n));
    };
    for (const auto& m : in.g_basis) check_shape(m, "g basis");
    for (const auto& m : in.h_basis) check_shape(m, "h basis");
    for (const auto& m : in.torus_basis) check_shape(m, "torus basis");
    check_shape(in.diagonalizer, "diagonalizer");

    Span g_span(n * n), h_span(n * n), t_span(n * n);
    for (const auto& m : in.g_basis)
        if (!g_span.add(flatten(m))) throw InputError("g basis is linearly dependent");
    for (const auto& m : in.h_basis) {
        if (!h_span.add(flatten(m))) throw InputError("h basis is linearly dependent");
        if (!g_span.contains(flatten(m))) throw DomainError("h is not contained in g");
    }
    for (const auto& m : in.torus_basis) {
        if (!t_span.add(flatten(m))) throw InputError("torus basis is linearly dependent");
        if (!h_span.contains(flatten(m))) throw DomainError("torus is not contained in h");
    }
    if (!is_bracket_closed(in.g_basis)) throw DomainError("g basis does not span a Lie algebra");
    if (!is_bracket_closed(in.h_basis)) throw DomainError("h basis does not span a Lie subalgebra");

    RMatrix pinv;
    try {
        pinv = inverse(in.diagonalizer);
    } catch (const std::domain_error&) {
        throw DomainError("diagonalizer is singular");
    }
    const std::size_t k = in.torus_basis.size();
    std::vector<RMatrix> diag;
    for (const auto& y : in.torus_basis) {
        RMatrix d = pinv * y * in.diagonalizer;
        if (!d.is_diagonal()) throw DomainError("torus not simultaneously diagonalizable with the provided conjugation");
        diag.push_back(std::move(d));
    }
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j)
            if (!commutator(in.torus_basis[i], in.torus_basis[j]).is_zero()) throw DomainError("torus basis does not commute");

    // joint eigenvalue functional of each eigenvector
    std::vector<RVec> lambda(n, RVec(k));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) lambda[i][j] = diag[j](i, i);

    std::map<RVec, std::vector<std::size_t>> cells; // weight -> flattened positions
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            RVec w(k);
            for (std::size_t j = 0; j < k; ++j) w[j] = lambda[a][j] - lambda[b][j];
            cells[w].push_back(a * n + b);
        }

    auto weight_dims = [&](const std::vector<RMatrix>& basis, const char* what) {
        std::vector<RVec> conj;
        for (const auto& m : basis) conj.push_back(flatten(pinv * m * in.diagonalizer));
        std::map<RVec, std::int64_t> dims;
        std::size_t total = 0;
        for (const auto& [w, positions] : cells) {
            Span s(positions.size());
            for (const auto& c : conj) {
                RVec proj;
                proj.reserve(positions.size());
                for (auto p : positions) proj.push_back(c[p]);
                s.add(proj);
            }
            if (s.dim() > 0) dims[w] = static_cast<std::int64_t>(s.dim());
            total += s.dim();
        }
        if (total != basis.size())
            throw DomainError(std::string("weight-space dimensions of ") + what + " sum to " + std::to_string(total) +
                              " instead of " + std::to_string(basis.size()) + "; the subspace is not torus-stable");
        return dims;
    };
    auto g_dims = weight_dims(in.g_basis, "g");
    auto h_dims = weight_dims(in.h_basis, "h");

    WeightList h, q;
    for (const auto& [w, d] : g_dims) {
        std::int64_t dh = h_dims.count(w) ? h_dims.at(w) : 0;
        if (dh > d) throw DomainError("h weight space larger than the g weight space");
        if (dh > 0) h.push_back({LinearForm(w), dh});
        if (d > dh) q.push_back({LinearForm(w), d - dh});
    }
    for (const auto& [w, d] : h_dims)
        if (!g_dims.count(w)) throw DomainError("h has a weight that g lacks");

    return make_pair(free_space(k, "c"), h, q,
                     {{"family", "matrix"},
                      {"dim_g", std::to_string(in.g_basis.size())},
                      {"dim_h", std::to_string(in.h_basis.size())}});
}

MatrixPairInput sl_block_matrices(const BlockPattern& pattern) {
    const BlockPattern p = pattern.normalized();
    p.validate();
    const std::size_t n = p.n();
    auto unit = [&](std::size_t a, std::size_t b) {
        RMatrix m(n, n);
        m(a, b) = 1;
        return m;
    };
    auto hdiff = [&](std::size_t a) { return unit(a, a) - unit(a + 1, a + 1); };
    MatrixPairInput in;
    in.ambient_dim = n;
    in.diagonalizer = RMatrix::identity(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (a != b) in.g_basis.push_back(unit(a, b));
    for (std::size_t a = 0; a + 1 < n; ++a) in.g_basis.push_back(hdiff(a));
    auto blocks = p.block_of();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            if (p.in_h(a, b)) in.h_basis.push_back(unit(a, b));
    for (std::size_t a = 0; a + 1 < n; ++a)
        if (blocks[a] == blocks[a + 1] && p.kinds[blocks[a]] == BlockKind::Full) {
            in.h_basis.push_back(hdiff(a));
            in.torus_basis.push_back(hdiff(a));
        }
    return in;
}

namespace {

// Left multiplication by 1, i, j, k on H = R^4 with basis (1, i, j, k).
RMatrix quaternion_unit(int u) {
    static const int table[4][4][4] = {
        {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}},
        {{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, 0}},
        {{0, 0, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, -1, 0, 0}},
        {{0, 0, 0, -1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}},
    };
    RMatrix m(4, 4);
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = table[u][r][c];
    return m;
}

// Real 4N x 4N matrix of the quaternionic matrix u * E_ab.
RMatrix quaternion_elementary(std::size_t size, std::size_t a, std::size_t b, int u) {
    RMatrix m(4 * size, 4 * size);
    RMatrix q = quaternion_unit(u);
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) m(4 * a + r, 4 * b + c) = q(r, c);
    return m;
}

// Basis of {X : X^T J + J X = 0} spanned by quaternionic matrices supported
// on rows/columns in `coords`.
std::vector<RMatrix> quaternionic_unitary_basis(std::size_t size, const std::vector<std::size_t>& coords,
                                                 const RMatrix& J) {
    std::vector<RMatrix> out;
    Span span(16 * size * size);
    for (auto a : coords)
        for (auto b : coords)
            for (int u = 0; u < 4; ++u) {
                RMatrix e = quaternion_elementary(size, a, b, u);
                RMatrix x = e - J * transpose(e) * J;
                if (x.is_zero()) continue;
                if (span.add(flatten(x))) out.push_back(std::move(x));
            }
    return out;
}

} // namespace

MatrixPairInput quaternionic_pair_matrices(std::size_t p1, std::size_t q1, std::size_t p2, std::size_t q2) {
    const std::size_t size = p1 + q1 + p2 + q2;
    if (size == 0) throw InputError("empty quaternionic signature");
    // coordinate order: factor 1 positive, factor 1 negative, factor 2 positive, factor 2 negative
    std::vector<int> signature;
    signature.insert(signature.end(), p1, 1);
    signature.insert(signature.end(), q1, -1);
    signature.insert(signature.end(), p2, 1);
    signature.insert(signature.end(), q2, -1);
    const std::size_t n = 4 * size;
    RMatrix J(n, n);
    for (std::size_t a = 0; a < size; ++a)
        for (std::size_t r = 0; r < 4; ++r) J(4 * a + r, 4 * a + r) = signature[a];

    std::vector<std::size_t> all(size), f1(p1 + q1), f2(p2 + q2);
    std::iota(all.begin(), all.end(), 0);
    std::iota(f1.begin(), f1.end(), 0);
    std::iota(f2.begin(), f2.end(), p1 + q1);

    MatrixPairInput in;
    in.ambient_dim = n;
    in.g_basis = quaternionic_unitary_basis(size, all, J);
    in.h_basis = quaternionic_unitary_basis(size, f1, J);
    auto h2 = quaternionic_unitary_basis(size, f2, J);
    in.h_basis.insert(in.h_basis.end(), h2.begin(), h2.end());

    // Split torus: E_ab + E_ba for positive a paired with negative b in each factor.
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t k = 0; k < std::min(p1, q1); ++k) pairs.push_back({k, p1 + k});
    for (std::size_t k = 0; k < std::min(p2, q2); ++k) pairs.push_back({p1 + q1 + k, p1 + q1 + p2 + k});
    in.diagonalizer = RMatrix::identity(n);
    for (auto [a, b] : pairs) {
        in.torus_basis.push_back(quaternion_elementary(size, a, b, 0) + quaternion_elementary(size, b, a, 0));
        // eigenvectors e_a + e_b (eigenvalue 1) and e_a - e_b (eigenvalue -1)
        for (std::size_t r = 0; r < 4; ++r) {
            in.diagonalizer(4 * a + r, 4 * a + r) = 1;
            in.diagonalizer(4 * b + r, 4 * a + r) = 1;
            in.diagonalizer(4 * a + r, 4 * b + r) = 1;
            in.diagonalizer(4 * b + r, 4 * b + r) = -1;
        }
    }
    return in;
}

// --- presets -------------------------------------------------------------------

BlockPattern BlockPreset::pattern(const std::vector<std::size_t>& sizes) const {
    if (sizes.size() != kinds.size())
        throw InputError("preset " + table + "/" + name + " expects " + std::to_string(kinds.size()) + " block sizes");
    return BlockPattern{sizes, kinds, upper};
}

namespace {

constexpr BlockKind F = BlockKind::Full;
constexpr BlockKind I = BlockKind::Identity;

using Sizes = std::vector<std::size_t>;

long s(const Sizes& v, std::size_t i) { return static_cast<long>(v[i]); }

} // namespace

const std::vector<BlockPreset>& table1_presets() {
    static const std::vector<BlockPreset> presets = {
        {"table1", "H1", {F, I}, {}, "p <= q+1", [](const Sizes& v) { return s(v, 0) <= s(v, 1) + 1; }},
        {"table1", "H2", {F, I}, {{0, 1}}, "p = 1", [](const Sizes& v) { return s(v, 0) == 1; }},
        {"table1", "H3", {F, F}, {{0, 1}}, "p = q = 1", [](const Sizes& v) { return s(v, 0) == 1 && s(v, 1) == 1; }},
        {"table1", "H4", {F, F}, {}, "p <= q+1, q <= p+1",
         [](const Sizes& v) { return s(v, 0) <= s(v, 1) + 1 && s(v, 1) <= s(v, 0) + 1; }},
    };
    return presets;
}

const std::vector<BlockPreset>& table2_presets() {
    static const std::vector<BlockPreset> presets = {
        {"table2", "H1", {F, I, I}, {{0, 2}}, "p <= q+1", [](const Sizes& v) { return s(v, 0) <= s(v, 1) + 1; }},
        {"table2", "H2", {I, F, I}, {{0, 2}}, "q <= p+r+1",
         [](const Sizes& v) { return s(v, 1) <= s(v, 0) + s(v, 2) + 1; }},
        {"table2", "H3", {I, F, I}, {{0, 1}, {0, 2}}, "q <= r+1", [](const Sizes& v) { return s(v, 1) <= s(v, 2) + 1; }},
        {"table2", "H4", {F, F, F}, {{0, 1}, {0, 2}, {1, 2}}, "p = q = r = 1",
         [](const Sizes& v) { return s(v, 0) == 1 && s(v, 1) == 1 && s(v, 2) == 1; }},
        {"table2", "H5", {F, F, I}, {}, "p <= q+r+1, q <= p+r+1",
         [](const Sizes& v) { return s(v, 0) <= s(v, 1) + s(v, 2) + 1 && s(v, 1) <= s(v, 0) + s(v, 2) + 1; }},
        {"table2", "H6", {F, F, I}, {{0, 2}}, "p <= q+1, q <= p+r+1",
         [](const Sizes& v) { return s(v, 0) <= s(v, 1) + 1 && s(v, 1) <= s(v, 0) + s(v, 2) + 1; }},
        {"table2", "H7", {F, F, I}, {{0, 1}, {0, 2}}, "p = 1, q <= r+1",
         [](const Sizes& v) { return s(v, 0) == 1 && s(v, 1) <= s(v, 2) + 1; }},
        {"table2", "H8", {F, I, F}, {{0, 2}}, "p <= q+1, r <= q+1",
         [](const Sizes& v) { return s(v, 0) <= s(v, 1) + 1 && s(v, 2) <= s(v, 1) + 1; }},
        {"table2", "H9", {I, F, F}, {{0, 1}, {0, 2}}, "q <= r+1, r <= q+1",
         [](const Sizes& v) { return s(v, 1) <= s(v, 2) + 1 && s(v, 2) <= s(v, 1) + 1; }},
        {"table2", "H10", {F, F, F}, {}, "p <= q+r+1, q <= p+r+1, r <= p+q+1",
         [](const Sizes& v) {
             return s(v, 0) <= s(v, 1) + s(v, 2) + 1 && s(v, 1) <= s(v, 0) + s(v, 2) + 1 &&
                    s(v, 2) <= s(v, 0) + s(v, 1) + 1;
         }},
        {"table2", "H11", {F, F, F}, {{0, 2}}, "p <= q+1, q <= p+r+1, r <= q+1",
         [](const Sizes& v) {
             return s(v, 0) <= s(v, 1) + 1 && s(v, 1) <= s(v, 0) + s(v, 2) + 1 && s(v, 2) <= s(v, 1) + 1;
         }},
        {"table2", "H12", {F, F, F}, {{0, 1}, {0, 2}}, "p = 1, q <= r+1, r <= q+1",
         [](const Sizes& v) { return s(v, 0) == 1 && s(v, 1) <= s(v, 2) + 1 && s(v, 2) <= s(v, 1) + 1; }},
    };
    return presets;
}

const BlockPreset& find_preset(const std::string& name, std::size_t num_blocks) {
    std::string table, short_name = name;
    if (auto slash = name.find('/'); slash != std::string::npos) {
        table = name.substr(0, slash);
        short_name = name.substr(slash + 1);
    } else if (num_blocks == 2) {
        table = "table1";
    } else if (num_blocks == 3) {
        table = "table2";
    }
    const std::vector<BlockPreset>* list = nullptr;
    if (table == "table1") list = &table1_presets();
    else if (table == "table2") list = &table2_presets();
    if (list)
        for (const auto& p : *list)
            if (p.name == short_name) return p;
    throw InputError("unknown block pattern preset '" + name + "'");
}

} // namespace temper
