#include "ri/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ri {

Matrix Matrix::identity(int d) {
    Matrix m(d, d);
    for (int i = 0; i < d; ++i)
        m(i, i) = 1.0;
    return m;
}

Matrix Matrix::from_columns(const std::vector<CVector>& columns) {
    if (columns.empty())
        return Matrix();
    const int rows = int(columns[0].size());
    Matrix m(rows, int(columns.size()));
    for (int j = 0; j < int(columns.size()); ++j) {
        if (int(columns[j].size()) != rows)
            throw std::invalid_argument("ragged column list");
        for (int i = 0; i < rows; ++i)
            m(i, j) = columns[j][i];
    }
    return m;
}

Matrix Matrix::outer(const CVector& u, const CVector& v) {
    Matrix m(int(u.size()), int(v.size()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            m(i, j) = u[i] * std::conj(v[j]);
    return m;
}

namespace {
void check_same_shape(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("matrix shape mismatch");
}
} // namespace

Matrix& Matrix::operator+=(const Matrix& o) {
    if (empty()) {
        *this = o;
        return *this;
    }
    check_same_shape(*this, o);
    for (size_t k = 0; k < a_.size(); ++k)
        a_[k] += o.a_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    if (empty()) {
        *this = o;
        return *this *= -1.0;
    }
    check_same_shape(*this, o);
    for (size_t k = 0; k < a_.size(); ++k)
        a_[k] -= o.a_[k];
    return *this;
}

Matrix& Matrix::operator*=(Complex s) {
    for (auto& v : a_)
        v *= s;
    return *this;
}

Matrix& Matrix::operator*=(double s) {
    for (auto& v : a_)
        v *= s;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("matrix product shape mismatch");
    Matrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0))
                continue;
            for (int j = 0; j < b.cols(); ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

Matrix Matrix::adjoint() const {
    Matrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            m(j, i) = std::conj((*this)(i, j));
    return m;
}

Complex Matrix::trace() const {
    Complex t = 0.0;
    for (int i = 0; i < std::min(rows_, cols_); ++i)
        t += (*this)(i, i);
    return t;
}

double Matrix::frobenius_norm() const {
    double acc = 0.0;
    for (const auto& v : a_)
        acc += std::norm(v);
    return std::sqrt(acc);
}

CVector Matrix::column(int j) const {
    CVector v(rows_);
    for (int i = 0; i < rows_; ++i)
        v[i] = (*this)(i, j);
    return v;
}

CVector matvec(const Matrix& m, const CVector& v) {
    if (m.cols() != int(v.size()))
        throw std::invalid_argument("matvec shape mismatch");
    CVector out(m.rows(), Complex(0.0));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            out[i] += m(i, j) * v[j];
    return out;
}

Complex inner(const CVector& a, const CVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("inner product shape mismatch");
    Complex acc = 0.0;
    for (size_t i = 0; i < a.size(); ++i)
        acc += std::conj(a[i]) * b[i];
    return acc;
}

double vector_norm(const CVector& v) {
    double acc = 0.0;
    for (const auto& c : v)
        acc += std::norm(c);
    return std::sqrt(acc);
}

CVector operator+(CVector a, const CVector& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("vector sum shape mismatch");
    for (size_t i = 0; i < a.size(); ++i)
        a[i] += b[i];
    return a;
}

CVector operator*(CVector v, Complex s) {
    for (auto& c : v)
        c *= s;
    return v;
}

CVector operator*(CVector v, double s) {
    for (auto& c : v)
        c *= s;
    return v;
}

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols())
        return false;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = i; j < m.cols(); ++j)
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol)
                return false;
    return true;
}

std::vector<double> hermitian_eigenvalues(const Matrix& input) {
    if (input.rows() != input.cols())
        throw std::invalid_argument("eigenvalues of a non-square matrix");
    const int d = input.rows();
    if (d == 0)
        return {};
    Matrix a = input;
    // Symmetrize to kill roundoff-level asymmetry.
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const Complex v = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = v;
        }

    auto off_norm = [&]() {
        double acc = 0.0;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (i != j)
                    acc += std::norm(a(i, j));
        return std::sqrt(acc);
    };

    const double scale = std::max(a.frobenius_norm(), 1e-300);
    for (int sweep = 0; sweep < 100 && off_norm() > 1e-14 * scale; ++sweep) {
        for (int p = 0; p < d; ++p)
            for (int q = p + 1; q < d; ++q) {
                const Complex apq = a(p, q);
                if (std::abs(apq) <= 1e-300)
                    continue;
                // Unitary 2x2 rotation that zeroes the (p, q) entry.
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double absapq = std::abs(apq);
                const Complex phase = apq / absapq;
                const double tau = (aqq - app) / (2.0 * absapq);
                const double t = (tau >= 0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Columns: v_p' = c v_p - s conj(phase) v_q,
                //          v_q' = s phase v_p + c v_q  (then rows likewise).
                for (int k = 0; k < d; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp - s * std::conj(phase) * akq;
                    a(k, q) = s * phase * akp + c * akq;
                }
                for (int k = 0; k < d; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk - s * phase * aqk;
                    a(q, k) = s * std::conj(phase) * apk + c * aqk;
                }
            }
    }

    std::vector<double> eig(d);
    for (int i = 0; i < d; ++i)
        eig[i] = a(i, i).real();
    std::sort(eig.begin(), eig.end());
    return eig;
}

double min_eigenvalue(const Matrix& m) {
    const auto eig = hermitian_eigenvalues(m);
    return eig.empty() ? 0.0 : eig.front();
}

bool is_positive_semidefinite(const Matrix& m, double tol_scale) {
    return min_eigenvalue(m) >= -tol_scale * (1.0 + m.frobenius_norm());
}

PivotedQR pivoted_qr(const Matrix& columns, double rel_rank_tol) {
    const int rows = columns.rows();
    const int cols = columns.cols();
    Matrix r = columns;
    std::vector<CVector> reflectors;
    std::vector<int> perm(cols);
    for (int j = 0; j < cols; ++j)
        perm[j] = j;

    PivotedQR out;
    const int steps = std::min(rows, cols);
    std::vector<double> rdiag;

    for (int j = 0; j < steps; ++j) {
        // Pivot: remaining column with the largest residual norm. Norms are
        // recomputed from scratch each step rather than downdated.
        int best = j;
        double best_norm = -1.0;
        for (int k = j; k < cols; ++k) {
            double acc = 0.0;
            for (int i = j; i < rows; ++i)
                acc += std::norm(r(i, k));
            if (acc > best_norm) {
                best_norm = acc;
                best = k;
            }
        }
        if (best != j) {
            for (int i = 0; i < rows; ++i)
                std::swap(r(i, j), r(i, best));
            std::swap(perm[j], perm[best]);
        }

        double xnorm = std::sqrt(std::max(best_norm, 0.0));
        rdiag.push_back(xnorm);
        if (xnorm == 0.0)
            break;

        // Householder vector for column j below the diagonal.
        CVector v(rows - j);
        for (int i = j; i < rows; ++i)
            v[i - j] = r(i, j);
        const Complex x0 = v[0];
        const Complex phase =
            std::abs(x0) > 0.0 ? x0 / std::abs(x0) : Complex(1.0);
        const Complex alpha = -phase * xnorm;
        v[0] -= alpha;
        const double vnorm = vector_norm(v);
        if (vnorm > 0.0) {
            for (auto& c : v)
                c /= vnorm;
            // Apply H = I - 2 v v^dag to the trailing block.
            for (int k = j; k < cols; ++k) {
                Complex dot = 0.0;
                for (int i = j; i < rows; ++i)
                    dot += std::conj(v[i - j]) * r(i, k);
                dot *= 2.0;
                for (int i = j; i < rows; ++i)
                    r(i, k) -= dot * v[i - j];
            }
        }
        reflectors.push_back(std::move(v));
    }

    int rank = 0;
    const double threshold = rdiag.empty() ? 0.0 : rel_rank_tol * rdiag[0];
    for (double dgn : rdiag)
        if (dgn > threshold && dgn > 0.0)
            ++rank;
        else
            break;

    // Accumulate Q (first `rank` columns) by applying the reflectors to the
    // leading columns of the identity in reverse order.
    Matrix q(rows, rank);
    for (int c = 0; c < rank; ++c)
        q(c, c) = 1.0;
    for (int j = int(reflectors.size()) - 1; j >= 0; --j) {
        const CVector& v = reflectors[j];
        for (int k = 0; k < rank; ++k) {
            Complex dot = 0.0;
            for (int i = j; i < rows; ++i)
                dot += std::conj(v[i - j]) * q(i, k);
            dot *= 2.0;
            for (int i = j; i < rows; ++i)
                q(i, k) -= dot * v[i - j];
        }
    }

    out.q = std::move(q);
    out.rank = rank;
    out.rdiag = std::move(rdiag);
    return out;
}

Matrix projector_onto_range(const Matrix& columns, double rel_rank_tol) {
    const int rows = columns.rows();
    if (columns.cols() == 0)
        return Matrix::zero(rows, rows);
    const PivotedQR qr = pivoted_qr(columns, rel_rank_tol);
    if (qr.rank == 0)
        return Matrix::zero(rows, rows);
    return qr.q * qr.q.adjoint();
}

double smallest_singular_value(const Matrix& columns) {
    if (columns.cols() == 0)
        return 0.0;
    const Matrix gram = columns.adjoint() * columns;
    const double lambda = std::max(0.0, min_eigenvalue(gram));
    return std::sqrt(lambda);
}

Matrix solve_linear(Matrix a, Matrix b) {
    if (a.rows() != a.cols() || a.rows() != b.rows())
        throw std::invalid_argument("solve_linear shape mismatch");
    const int d = a.rows();
    for (int col = 0; col < d; ++col) {
        int pivot = col;
        for (int i = col + 1; i < d; ++i)
            if (std::abs(a(i, col)) > std::abs(a(pivot, col)))
                pivot = i;
        if (std::abs(a(pivot, col)) < 1e-300)
            throw std::runtime_error("singular linear system");
        if (pivot != col) {
            for (int j = 0; j < d; ++j)
                std::swap(a(col, j), a(pivot, j));
            for (int j = 0; j < b.cols(); ++j)
                std::swap(b(col, j), b(pivot, j));
        }
        const Complex diag = a(col, col);
        for (int i = col + 1; i < d; ++i) {
            const Complex f = a(i, col) / diag;
            if (f == Complex(0.0))
                continue;
            for (int j = col; j < d; ++j)
                a(i, j) -= f * a(col, j);
            for (int j = 0; j < b.cols(); ++j)
                b(i, j) -= f * b(col, j);
        }
    }
    for (int col = d - 1; col >= 0; --col) {
        const Complex diag = a(col, col);
        for (int j = 0; j < b.cols(); ++j) {
            Complex acc = b(col, j);
            for (int k = col + 1; k < d; ++k)
                acc -= a(col, k) * b(k, j);
            b(col, j) = acc / diag;
        }
    }
    return b;
}

Matrix projector_gram_formula(const Matrix& columns) {
    if (columns.cols() == 0)
        return Matrix::zero(columns.rows(), columns.rows());
    const Matrix gram = columns.adjoint() * columns;
    const Matrix inv_adj = solve_linear(gram, columns.adjoint());
    return columns * inv_adj;
}

} // namespace ri
