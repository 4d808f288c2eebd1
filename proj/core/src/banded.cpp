#include "pfqed/detail/banded.hpp"

#include "pfqed/error.hpp"

#include <lapacke.h>

#include <algorithm>
#include <string>

namespace pfqed::detail {

template <typename T>
BandMatrix<T>::BandMatrix(int n, int kl, int ku)
    : n_(n)
    , kl_(kl)
    , ku_(ku)
    , ldab_(2 * kl + ku + 1)
    , ab_(static_cast<std::size_t>(ldab_) * n, T{})
{
    if (n < 1 || kl < 0 || ku < 0) {
        throw PreconditionError("BandMatrix: invalid dimensions");
    }
}

template <typename T>
void BandMatrix<T>::multiply(T const* x, T* y) const
{
    for (int i = 0; i < n_; ++i) {
        T acc{};
        int const j0 = std::max(0, i - kl_);
        int const j1 = std::min(n_ - 1, i + ku_);
        for (int j = j0; j <= j1; ++j) {
            acc += (*this)(i, j) * x[j];
        }
        y[i] = acc;
    }
}

namespace {

lapack_int gbtrf(int n, int kl, int ku, double* ab, int ldab, lapack_int* ipiv)
{
    return LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n, n, kl, ku, ab, ldab, ipiv);
}

lapack_int gbtrf(int n, int kl, int ku, std::complex<double>* ab, int ldab, lapack_int* ipiv)
{
    return LAPACKE_zgbtrf(LAPACK_COL_MAJOR, n, n, kl, ku, reinterpret_cast<lapack_complex_double*>(ab), ldab, ipiv);
}

lapack_int gbtrs(int n, int kl, int ku, double const* ab, int ldab, lapack_int const* ipiv, double* b)
{
    return LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n, kl, ku, 1, ab, ldab, ipiv, b, n);
}

lapack_int gbtrs(int n, int kl, int ku, std::complex<double> const* ab, int ldab, lapack_int const* ipiv,
                 std::complex<double>* b)
{
    return LAPACKE_zgbtrs(LAPACK_COL_MAJOR, 'N', n, kl, ku, 1, reinterpret_cast<lapack_complex_double const*>(ab),
                          ldab, ipiv, reinterpret_cast<lapack_complex_double*>(b), n);
}

} // namespace

template <typename T>
BandLU<T>::BandLU(BandMatrix<T> a)
    : lu_(std::move(a))
    , ipiv_(static_cast<std::size_t>(lu_.size()))
{
    static_assert(sizeof(lapack_int) == sizeof(int));
    lapack_int const info = gbtrf(lu_.size(), lu_.kl(), lu_.ku(), lu_.data(), lu_.ldab(), ipiv_.data());
    if (info < 0) {
        throw LinearAlgebraError("gbtrf: illegal argument " + std::to_string(-info));
    }
    if (info > 0) {
        throw LinearAlgebraError("gbtrf: exactly singular pivot at row " + std::to_string(info));
    }
}

template <typename T>
void BandLU<T>::solve_in_place(T* b) const
{
    auto& lu = const_cast<BandMatrix<T>&>(lu_);
    lapack_int const info = gbtrs(lu.size(), lu.kl(), lu.ku(), lu.data(), lu.ldab(), ipiv_.data(), b);
    if (info != 0) {
        throw LinearAlgebraError("gbtrs failed with info " + std::to_string(info));
    }
}

template class BandMatrix<double>;
template class BandMatrix<std::complex<double>>;
template class BandLU<double>;
template class BandLU<std::complex<double>>;

} // namespace pfqed::detail
