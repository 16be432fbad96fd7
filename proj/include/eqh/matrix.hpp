#pragma once

#include "eqh/integer.hpp"

#include <optional>
#include <string>
#include <vector>

namespace eqh {

using Vec = std::vector<Integer>;

// Dense integer matrix, row-major.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);

    static IntMatrix identity(size_t n);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Integer& operator()(size_t i, size_t j) { return e_[i * cols_ + j]; }
    const Integer& operator()(size_t i, size_t j) const { return e_[i * cols_ + j]; }
    Integer* row(size_t i) { return e_.data() + i * cols_; }
    const Integer* row(size_t i) const { return e_.data() + i * cols_; }
    const std::vector<Integer>& entries() const { return e_; }

    Vec column(size_t j) const;
    Vec row_vec(size_t i) const;
    void set_column(size_t j, const Vec& v);
    IntMatrix transpose() const;
    IntMatrix rows_range(size_t begin, size_t end) const;
    IntMatrix cols_range(size_t begin, size_t end) const;
    bool is_zero() const;

    // Elementary operations used by the reductions.
    void swap_rows(size_t a, size_t b);
    void swap_cols(size_t a, size_t b);
    void add_row(size_t dst, size_t src, const Integer& f);  // row dst += f*row src
    void add_col(size_t dst, size_t src, const Integer& f);  // col dst += f*col src
    void negate_row(size_t i);
    void negate_col(size_t j);

    friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
    }
    friend bool operator!=(const IntMatrix& a, const IntMatrix& b) { return !(a == b); }

    std::string str() const;

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Integer> e_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
Vec operator*(const IntMatrix& a, const Vec& v);
IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
IntMatrix reduce_mod(const IntMatrix& a, const Integer& q);

bool is_zero(const Vec& v);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& a, const Integer& f);
std::string vec_str(const Vec& v);

struct SnfResult {
    IntMatrix U, D, V;
    // Filled only when requested; U*Uinv = I and V*Vinv = I.
    IntMatrix Uinv, Vinv;
    size_t rank = 0;
    Vec diagonal() const;
};

struct SnfOptions {
    bool want_u = true;
    bool want_v = true;
    bool want_u_inverse = false;
    bool want_v_inverse = false;
};

SnfResult smith(const IntMatrix& a, SnfOptions opt = {});

// Integer solution of a*x = b if one exists.
std::optional<Vec> solve(const IntMatrix& a, const Vec& b);

// Basis (as columns) of the integer kernel of a.
IntMatrix kernel_basis(const IntMatrix& a);
size_t rank(const IntMatrix& a);
Integer determinant(const IntMatrix& a);

// ker(d_out) / im(d_in) for d_in: C_{k+1} -> C_k and d_out: C_k -> C_{k-1}.
class HomologyGroup {
public:
    size_t free_rank = 0;
    Vec torsion;             // invariant factors > 1, divisibility chain
    std::vector<Vec> generators;  // torsion generators first, then free ones

    size_t ambient_dim() const { return ambient_; }
    size_t size() const { return generators.size(); }
    // 0 for free generators.
    Integer order(size_t i) const { return i < torsion.size() ? torsion[i] : Integer(0); }
    // Coordinates of a cycle in the generator basis, torsion entries reduced.
    Vec express(const Vec& cycle) const;
    Vec reduce(Vec coords) const;
    bool is_zero() const { return generators.empty(); }
    // Replace generator i by its negative.
    void negate_generator(size_t i);
    std::string describe() const;

private:
    friend HomologyGroup homology(const IntMatrix&, const IntMatrix&);
    size_t ambient_ = 0;
    IntMatrix proj_;
};

HomologyGroup homology(const IntMatrix& d_in, const IntMatrix& d_out);

}  // namespace eqh
