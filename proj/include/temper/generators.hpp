#pragma once

// Weight data for concrete subalgebra pairs h in g.

#include "temper/core.hpp"
#include "temper/linalg.hpp"

#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace temper {

enum class BlockKind { Full, Identity };

/// How the split torus of a block subgroup is chosen.
///  - Derived: trace zero inside every full block (the torus of [h, h]).
///  - FullDiagonal: all diagonal entries of full blocks, overall trace zero.
/// Identity blocks contribute no coordinates in either mode.
enum class TorusMode { Derived, FullDiagonal };

/// Block upper-triangular shape inside sl(n): diagonal blocks are either full
/// general linear blocks or identity blocks, and `upper` lists the
/// off-diagonal blocks (i < j) that belong to h.
struct BlockPattern {
    std::vector<std::size_t> sizes;
    std::vector<BlockKind> kinds;
    std::set<std::pair<std::size_t, std::size_t>> upper;

    std::size_t n() const;
    /// Zero-size blocks removed, upper blocks renumbered.
    BlockPattern normalized() const;
    /// Throws DomainError when the span is not closed under the bracket.
    void validate() const;
    /// Block index of each matrix coordinate.
    std::vector<std::size_t> block_of() const;
    bool in_h(std::size_t a, std::size_t b) const; ///< off-diagonal position (a, b)
};

SpacePtr sl_block_space(const BlockPattern& pattern, TorusMode mode = TorusMode::Derived);
PairSpec build_sl_block(const BlockPattern& pattern, TorusMode mode = TorusMode::Derived);

/// Block-diagonal product of sl(n_i) inside sl(sum n_i).
PairSpec build_product_in_sl(const std::vector<std::size_t>& parts);
/// Product of sp(n_i, R) inside sp(sum n_i, R).
PairSpec build_product_in_sp(const std::vector<std::size_t>& parts);
/// so(p1, q1) + so(p2, q2) inside so(p1 + p2, q1 + q2).
PairSpec build_so_pair(std::size_t p1, std::size_t q1, std::size_t p2, std::size_t q2);
/// so(p, q) inside sl(p + q, R).
PairSpec build_so_in_sl(std::size_t p, std::size_t q);
/// sp(m, R) inside sl(2m, R).
PairSpec build_sp_in_sl(std::size_t m);

/// Complex Lie algebra viewed as a real one: every multiplicity doubles.
PairSpec realify(const PairSpec& spec);

enum class ComplexFamily { SL, SO, SP };
/// g(m, C) + g(n, C) inside g(m + n, C) as real Lie algebras.
PairSpec build_complex_product(ComplexFamily family, std::size_t m, std::size_t n);

// --- weight calculus on abstract representations ---------------------------

using WeightList = std::vector<Weight>;
WeightList exterior_square(const WeightList& v);
WeightList symmetric_square(const WeightList& v);
WeightList tensor_product(const WeightList& a, const WeightList& b);
/// Removes `count` copies of the zero weight; throws if not enough present.
WeightList remove_zero_weights(WeightList v, std::int64_t count);

// --- matrix mode -------------------------------------------------------------

/// g and h given by explicit rational matrix bases; the torus basis must be
/// simultaneously diagonalized by `diagonalizer` (P^-1 Y P diagonal).
struct MatrixPairInput {
    std::size_t ambient_dim = 0;
    std::vector<RMatrix> g_basis;
    std::vector<RMatrix> h_basis;
    std::vector<RMatrix> torus_basis;
    RMatrix diagonalizer;
};

bool is_bracket_closed(const std::vector<RMatrix>& basis);

/// Joint ad(a)-weight decomposition of h and g/h. The torus coordinates are
/// the coefficients with respect to `torus_basis`.
PairSpec extract_weights(const MatrixPairInput& input);

/// Matrix bases realizing build_sl_block (derived torus).
MatrixPairInput sl_block_matrices(const BlockPattern& pattern);
/// sp(p1, q1) + sp(p2, q2) inside sp(p1 + p2, q1 + q2) as real 4(p+q) square
/// matrices, with a maximal split torus of h.
MatrixPairInput quaternionic_pair_matrices(std::size_t p1, std::size_t q1, std::size_t p2, std::size_t q2);

// --- parabolic bookkeeping ---------------------------------------------------

/// For h inside the standard parabolic p = l + u with the pattern's blocks:
/// s = h cap l, v = h cap u, and the quotients l/s, u/v, on the torus of s.
struct LeviDecomposition {
    WeightModule s;
    WeightModule v;
    WeightModule l_over_s;
    WeightModule u_over_v;
};
LeviDecomposition levi_decomposition(const BlockPattern& pattern, TorusMode mode = TorusMode::Derived);

// --- table presets -------------------------------------------------------------

struct BlockPreset {
    std::string table; ///< "table1" or "table2"
    std::string name;  ///< "H1" ...
    std::vector<BlockKind> kinds;
    std::set<std::pair<std::size_t, std::size_t>> upper;
    std::string predicate_text;
    std::function<bool(const std::vector<std::size_t>&)> predicate;

    BlockPattern pattern(const std::vector<std::size_t>& sizes) const;
};

const std::vector<BlockPreset>& table1_presets();
const std::vector<BlockPreset>& table2_presets();
/// Looks up "table1/H2", "table2/H11", or a bare "H11" (table chosen by the
/// number of sizes). Throws InputError for unknown names.
const BlockPreset& find_preset(const std::string& name, std::size_t num_blocks);

} // namespace temper
