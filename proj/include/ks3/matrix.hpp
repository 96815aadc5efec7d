/*
 * Small dense matrix value types.
 *
 * Everything in this toolkit lives in M₃ (3×3 complex), its Bloch image
 * (8×8 real) or the Choi space (9×9 complex), so the types below are plain
 * row-major buffers with value semantics. No expression templates, no views;
 * copies of ≤ 9×9 matrices are cheaper than cleverness.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "ks3/error.hpp"

namespace ks3 {

using cx = std::complex<double>;

// ── ComplexMatrix: square, row-major ─────────────────────────────────────────
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {
        if (dim <= 0) throw InvalidDimension("ComplexMatrix: dim must be positive");
    }

    static ComplexMatrix identity(int dim) {
        ComplexMatrix m(dim);
        for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }

    int dim() const { return dim_; }

    cx& operator()(int r, int c) { return a_[static_cast<size_t>(r) * dim_ + c]; }
    const cx& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * dim_ + c]; }

    const std::vector<cx>& entries() const { return a_; }

    ComplexMatrix dagger() const {
        ComplexMatrix m(dim_);
        for (int r = 0; r < dim_; ++r)
            for (int c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
        return m;
    }

    cx trace() const {
        cx t = 0.0;
        for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const cx& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }

    // ‖A − A†‖_F
    double hermiticity_residual() const {
        double s = 0.0;
        for (int r = 0; r < dim_; ++r)
            for (int c = 0; c < dim_; ++c) {
                cx diff = (*this)(r, c) - std::conj((*this)(c, r));
                s += std::norm(diff);
            }
        return std::sqrt(s);
    }

    bool is_hermitian(double tol) const {
        return hermiticity_residual() <= tol * std::max(1.0, frobenius_norm());
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        require_same_dim(o);
        for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        require_same_dim(o);
        for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    ComplexMatrix& operator*=(cx s) {
        for (cx& v : a_) v *= s;
        return *this;
    }

  private:
    void require_same_dim(const ComplexMatrix& o) const {
        if (o.dim_ != dim_) throw DimensionMismatch("ComplexMatrix: dimension mismatch");
    }

    int dim_ = 0;
    std::vector<cx> a_;
};

inline ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
inline ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
inline ComplexMatrix operator*(cx s, ComplexMatrix a) { return a *= s; }
inline ComplexMatrix operator*(ComplexMatrix a, cx s) { return a *= s; }

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("ComplexMatrix: product dimension mismatch");
    const int n = a.dim();
    ComplexMatrix c(n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const cx aik = a(i, k);
            if (aik == cx{0.0, 0.0}) continue;
            for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline double distance_frobenius(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).frobenius_norm();
}

// Tr(A·B) without forming the product.
inline cx trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw DimensionMismatch("trace_of_product: dimension mismatch");
    cx t = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int k = 0; k < a.dim(); ++k) t += a(i, k) * b(k, i);
    return t;
}

// ── RealMatrix: rectangular, row-major ───────────────────────────────────────
class RealMatrix {
  public:
    RealMatrix() = default;
    RealMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {
        if (rows <= 0 || cols <= 0) throw InvalidDimension("RealMatrix: shape must be positive");
    }

    static RealMatrix identity(int n) {
        RealMatrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
    const double& operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

    const std::vector<double>& entries() const { return a_; }

    RealMatrix transpose() const {
        RealMatrix m(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
        return m;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (double v : a_) s += v * v;
        return std::sqrt(s);
    }

    // ‖A − Aᵀ‖_F (square only)
    double symmetry_residual() const {
        double s = 0.0;
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) {
                double diff = (*this)(r, c) - (*this)(c, r);
                s += diff * diff;
            }
        return std::sqrt(s);
    }

    RealMatrix& operator+=(const RealMatrix& o) {
        if (o.rows_ != rows_ || o.cols_ != cols_) throw DimensionMismatch("RealMatrix: shape mismatch");
        for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    RealMatrix& operator-=(const RealMatrix& o) {
        if (o.rows_ != rows_ || o.cols_ != cols_) throw DimensionMismatch("RealMatrix: shape mismatch");
        for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    RealMatrix& operator*=(double s) {
        for (double& v : a_) v *= s;
        return *this;
    }

  private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

inline RealMatrix operator+(RealMatrix a, const RealMatrix& b) { return a += b; }
inline RealMatrix operator-(RealMatrix a, const RealMatrix& b) { return a -= b; }
inline RealMatrix operator*(double s, RealMatrix a) { return a *= s; }

inline RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("RealMatrix: product shape mismatch");
    RealMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline std::vector<double> operator*(const RealMatrix& m, const std::vector<double>& v) {
    if (static_cast<int>(v.size()) != m.cols()) throw DimensionMismatch("RealMatrix: vector length mismatch");
    std::vector<double> out(static_cast<size_t>(m.rows()), 0.0);
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) out[r] += m(r, c) * v[c];
    return out;
}

// Complex vector through a real matrix (Bloch coefficients may be complex).
inline std::vector<cx> operator*(const RealMatrix& m, const std::vector<cx>& v) {
    if (static_cast<int>(v.size()) != m.cols()) throw DimensionMismatch("RealMatrix: vector length mismatch");
    std::vector<cx> out(static_cast<size_t>(m.rows()), cx{0.0, 0.0});
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) out[r] += m(r, c) * v[c];
    return out;
}

inline ComplexMatrix to_complex(const RealMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionMismatch("to_complex: square matrices only");
    ComplexMatrix out(m.rows());
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
    return out;
}

}  // namespace ks3
