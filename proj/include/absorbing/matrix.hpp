#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

#include "absorbing/errors.hpp"

namespace absorbing {

using cplx = std::complex<double>;

// Dense complex matrix, row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}

    static ComplexMatrix identity(int n);
    static ComplexMatrix diagonal(const std::vector<double>& d);
    static ComplexMatrix from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    cplx& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const cplx& operator()(int i, int j) const { return data_[static_cast<size_t>(i) * cols_ + j]; }

    std::vector<cplx>& data() { return data_; }
    const std::vector<cplx>& data() const { return data_; }

    ComplexMatrix operator+(const ComplexMatrix& o) const;
    ComplexMatrix operator-(const ComplexMatrix& o) const;
    ComplexMatrix operator*(const ComplexMatrix& o) const;
    ComplexMatrix operator*(cplx s) const;
    ComplexMatrix operator-() const { return *this * cplx(-1.0); }
    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;

    cplx trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    double hermiticity_defect() const;   // ||a - a*||_F, square only

    ComplexMatrix column(int j) const;   // rows x 1
    void set_column(int j, const ComplexMatrix& v);

    bool same_shape(const ComplexMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<cplx> data_;
};

inline ComplexMatrix operator*(cplx s, const ComplexMatrix& m) { return m * s; }
inline ComplexMatrix operator*(double s, const ComplexMatrix& m) { return m * cplx(s); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Row-major vectorization: vec(x)[i*cols + j] = x(i,j), as a column matrix.
ComplexMatrix vec(const ComplexMatrix& x);
ComplexMatrix unvec(const ComplexMatrix& v, int rows, int cols);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix hermitian_part(const ComplexMatrix& a);

// Hilbert-Schmidt inner product trace(a* b).
cplx hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

} // namespace absorbing
