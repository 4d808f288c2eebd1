#pragma once

#include <complex>
#include <vector>

namespace pfqed::detail {

/// General band matrix in LAPACK gbtrf layout (column major, with kl extra
/// rows reserved for fill-in from pivoting).
template <typename T>
class BandMatrix
{
  public:
    BandMatrix(int n, int kl, int ku);

    int size() const noexcept { return n_; }
    int kl() const noexcept { return kl_; }
    int ku() const noexcept { return ku_; }

    /// Element (i, j); (i, j) must lie inside the band.
    T& operator()(int i, int j) noexcept { return ab_[static_cast<std::size_t>(j) * ldab_ + (kl_ + ku_ + i - j)]; }
    T operator()(int i, int j) const noexcept
    {
        return ab_[static_cast<std::size_t>(j) * ldab_ + (kl_ + ku_ + i - j)];
    }

    bool in_band(int i, int j) const noexcept { return j - i <= ku_ && i - j <= kl_; }

    /// y = A x
    void multiply(T const* x, T* y) const;

    T* data() noexcept { return ab_.data(); }
    int ldab() const noexcept { return ldab_; }

  private:
    int n_;
    int kl_;
    int ku_;
    int ldab_;
    std::vector<T> ab_;
};

/// LU factorization with partial pivoting of a band matrix.
template <typename T>
class BandLU
{
  public:
    explicit BandLU(BandMatrix<T> a);

    /// Overwrites b with A^{-1} b.
    void solve_in_place(T* b) const;

    int size() const noexcept { return lu_.size(); }

  private:
    BandMatrix<T> lu_;
    std::vector<int> ipiv_;
};

extern template class BandMatrix<double>;
extern template class BandMatrix<std::complex<double>>;
extern template class BandLU<double>;
extern template class BandLU<std::complex<double>>;

} // namespace pfqed::detail
