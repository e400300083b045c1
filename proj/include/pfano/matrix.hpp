#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pfano/gf.hpp"

namespace pfano::matrix {

/// Dense matrix over GF(q) whose columns are grouped into width-t blocks,
/// 1-indexed by block label. A plain matrix is the t=1 case. Total column
/// count is num_blocks * block_width. Instances are immutable once built;
/// elimination runs on private copies.
class BlockMatrix {
public:
    BlockMatrix(gf::PrimeField field, int rows, int block_width,
                int num_blocks);

    static BlockMatrix identity(gf::PrimeField field, int n);

    const gf::PrimeField& field() const { return field_; }
    int rows() const { return rows_; }
    int block_width() const { return t_; }
    int num_blocks() const { return n_; }
    int cols() const { return n_ * t_; }

    std::uint32_t at(int r, int c) const { return data_[r * cols() + c]; }
    void set(int r, int c, std::uint32_t v);

    // entry (r, off) of block b, b in [1..n]
    std::uint32_t block_at(int r, int b, int off = 0) const {
        return at(r, (b - 1) * t_ + off);
    }
    void set_block(int r, int b, int off, std::uint32_t v) {
        set(r, (b - 1) * t_ + off, v);
    }

    /// Concatenation of the named blocks in ascending label order
    /// (duplicates dropped). Labels must lie in [1, n].
    BlockMatrix select(const std::vector<int>& blocks) const;

    /// [this | other], flattened to width-1 blocks; feeds rank and rref,
    /// where the block grouping is irrelevant.
    BlockMatrix augment(const BlockMatrix& other) const;

    bool operator==(const BlockMatrix&) const = default;

private:
    gf::PrimeField field_;
    int rows_;
    int t_;
    int n_;
    std::vector<std::uint32_t> data_;
};

struct RrefResult {
    BlockMatrix reduced;
    std::vector<int> pivot_cols;  // 1-indexed, strictly increasing
};

/// Reduced row-echelon form. Pivot selection scans each column top to
/// bottom and takes the first nonzero entry.
RrefResult rref(const BlockMatrix& m);

int rank(const BlockMatrix& m);

/// True iff every column of v lies in the span of m's columns.
bool in_column_space(const BlockMatrix& m, const BlockMatrix& v);

/// Coefficient blocks M_b (one t-by-t block per source block) expressing a
/// target block as sum_b H^{b} M_b, with per-block invertibility flags.
struct BlockCoefficients {
    std::vector<int> blocks;
    std::vector<BlockMatrix> coeff;
    std::vector<bool> invertible;

    bool all_invertible() const;
};

/// Solves cols * X = target and slices X into per-block coefficients.
/// Free variables are set to zero. Returns nothing when the target is
/// outside the span.
std::optional<BlockCoefficients> solve_combination(const BlockMatrix& cols,
                                                   const BlockMatrix& target);

/// Solves m * x = rhs for a single column rhs; free variables zero.
std::optional<std::vector<std::uint32_t>> solve_column(
    const BlockMatrix& m, const std::vector<std::uint32_t>& rhs);

BlockMatrix multiply(const BlockMatrix& a, const BlockMatrix& b);

/// Right-multiplies one block by a t-by-t matrix (column scaling for t=1).
BlockMatrix scale_block(const BlockMatrix& m, int block,
                        const BlockMatrix& s);

/// Deterministic in seed; result has full rank n.
BlockMatrix random_invertible(int n, gf::PrimeField field,
                              std::uint64_t seed);

std::vector<std::uint32_t> apply(const BlockMatrix& m,
                                 const std::vector<std::uint32_t>& x);

}  // namespace pfano::matrix
