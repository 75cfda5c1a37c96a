#include "absorbing/matrix.hpp"

#include <cmath>

namespace absorbing {

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& d) {
    const int n = static_cast<int>(d.size());
    ComplexMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
    const int r = static_cast<int>(rows.size());
    const int c = r > 0 ? static_cast<int>(rows.begin()->size()) : 0;
    ComplexMatrix m(r, c);
    int i = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != c)
            throw DimensionMismatch("from_rows: ragged rows");
        int j = 0;
        for (const auto& z : row) m(i, j++) = z;
        ++i;
    }
    return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
    if (!same_shape(o)) throw DimensionMismatch("matrix add: shape mismatch");
    ComplexMatrix m(rows_, cols_);
    for (size_t k = 0; k < data_.size(); ++k) m.data_[k] = data_[k] + o.data_[k];
    return m;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
    if (!same_shape(o)) throw DimensionMismatch("matrix sub: shape mismatch");
    ComplexMatrix m(rows_, cols_);
    for (size_t k = 0; k < data_.size(); ++k) m.data_[k] = data_[k] - o.data_[k];
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    if (!same_shape(o)) throw DimensionMismatch("matrix add: shape mismatch");
    for (size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    if (!same_shape(o)) throw DimensionMismatch("matrix sub: shape mismatch");
    for (size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
    if (cols_ != o.rows_) throw DimensionMismatch("matrix mul: inner dimension mismatch");
    ComplexMatrix m(rows_, o.cols_);
    // i-k-j order keeps both operands in row-major stride-1 access.
    for (int i = 0; i < rows_; ++i) {
        const cplx* arow = &data_[static_cast<size_t>(i) * cols_];
        cplx* crow = &m.data_[static_cast<size_t>(i) * o.cols_];
        for (int k = 0; k < cols_; ++k) {
            const cplx aik = arow[k];
            if (aik == cplx(0.0)) continue;
            const cplx* brow = &o.data_[static_cast<size_t>(k) * o.cols_];
            for (int j = 0; j < o.cols_; ++j) crow[j] += aik * brow[j];
        }
    }
    return m;
}

ComplexMatrix ComplexMatrix::operator*(cplx s) const {
    ComplexMatrix m(rows_, cols_);
    for (size_t k = 0; k < data_.size(); ++k) m.data_[k] = data_[k] * s;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix m(rows_, cols_);
    for (size_t k = 0; k < data_.size(); ++k) m.data_[k] = std::conj(data_[k]);
    return m;
}

cplx ComplexMatrix::trace() const {
    if (!is_square()) throw DimensionMismatch("trace: matrix not square");
    cplx t = 0.0;
    for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const cplx& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const cplx& z : data_) m = std::max(m, std::abs(z));
    return m;
}

double ComplexMatrix::hermiticity_defect() const {
    if (!is_square()) throw DimensionMismatch("hermiticity_defect: matrix not square");
    double s = 0.0;
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) s += std::norm((*this)(i, j) - std::conj((*this)(j, i)));
    return std::sqrt(s);
}

ComplexMatrix ComplexMatrix::column(int j) const {
    ComplexMatrix v(rows_, 1);
    for (int i = 0; i < rows_; ++i) v(i, 0) = (*this)(i, j);
    return v;
}

void ComplexMatrix::set_column(int j, const ComplexMatrix& v) {
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = v(i, 0);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0)) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    m(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return m;
}

ComplexMatrix vec(const ComplexMatrix& x) {
    ComplexMatrix v(x.rows() * x.cols(), 1);
    v.data() = x.data();
    return v;
}

ComplexMatrix unvec(const ComplexMatrix& v, int rows, int cols) {
    if (v.cols() != 1 || v.rows() != rows * cols)
        throw DimensionMismatch("unvec: length does not match target shape");
    ComplexMatrix x(rows, cols);
    x.data() = v.data();
    return x;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a * b - b * a;
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
    return (a + a.adjoint()) * cplx(0.5);
}

cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (!a.same_shape(b)) throw DimensionMismatch("hs_inner: shape mismatch");
    cplx s = 0.0;
    for (size_t k = 0; k < a.data().size(); ++k) s += std::conj(a.data()[k]) * b.data()[k];
    return s;
}

} // namespace absorbing
