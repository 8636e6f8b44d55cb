#pragma once

#include <complex>
#include <vector>

namespace ri {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Dense complex matrix, row-major. Sized for small Hilbert-space dimensions;
/// everything here is O(d^3) with tiny constants.
class Matrix {
  public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

    static Matrix identity(int d);
    static Matrix zero(int rows, int cols) { return Matrix(rows, cols); }
    static Matrix from_columns(const std::vector<CVector>& columns);
    /// Rank-one |u><v|.
    static Matrix outer(const CVector& u, const CVector& v);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return a_.empty(); }

    Complex& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Complex& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(Complex s);
    Matrix& operator*=(double s);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, Complex s) { return a *= s; }
    friend Matrix operator*(Matrix a, double s) { return a *= s; }
    friend Matrix operator*(Complex s, Matrix a) { return a *= s; }
    friend Matrix operator*(double s, Matrix a) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);

    Matrix adjoint() const;
    Complex trace() const;
    double frobenius_norm() const;
    CVector column(int j) const;

  private:
    int rows_, cols_;
    std::vector<Complex> a_;
};

inline double value_norm(const Matrix& m) { return m.frobenius_norm(); }

CVector matvec(const Matrix& m, const CVector& v);
Complex inner(const CVector& a, const CVector& b); // <a|b>, conjugate-linear in a
double vector_norm(const CVector& v);
CVector operator+(CVector a, const CVector& b);
CVector operator*(CVector v, Complex s);
CVector operator*(CVector v, double s);

/// Eigenvalues of a Hermitian matrix (ascending), by cyclic complex Jacobi
/// rotations. The input must be Hermitian to working precision.
std::vector<double> hermitian_eigenvalues(const Matrix& m);

double min_eigenvalue(const Matrix& m);

bool is_hermitian(const Matrix& m, double tol);

/// Scale-aware positive semi-definiteness: min eigenvalue >= -tol_scale *
/// (1 + frobenius norm).
bool is_positive_semidefinite(const Matrix& m, double tol_scale = 1e-10);

struct PivotedQR {
    Matrix q;                  // orthonormal columns spanning the column space
    int rank = 0;
    std::vector<double> rdiag; // |R_jj| in pivot order, non-increasing
};

/// Householder QR with column pivoting. Columns whose diagonal falls below
/// rel_rank_tol times the first diagonal are treated as dependent.
PivotedQR pivoted_qr(const Matrix& columns, double rel_rank_tol = 1e-10);

/// Orthogonal projector onto the column space, via pivoted QR.
Matrix projector_onto_range(const Matrix& columns, double rel_rank_tol = 1e-10);

/// Smallest singular value of the column matrix (sqrt of the smallest Gram
/// eigenvalue).
double smallest_singular_value(const Matrix& columns);

/// Solves A X = B by LU with partial pivoting; throws on (numerical)
/// singularity.
Matrix solve_linear(Matrix a, Matrix b);

/// The textbook projector formula C (C^dag C)^{-1} C^dag. Breaks down for
/// dependent columns; kept as the cross-check route.
Matrix projector_gram_formula(const Matrix& columns);

} // namespace ri
