#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace afvp {

/// Periodic index wrap into [0, n).
constexpr int wrap(int i, int n) noexcept
{
    const int r = i % n;
    return r < 0 ? r + n : r;
}

/// Dense n_x by n_v array with x as the fast index, so rows at fixed v are
/// contiguous. Value semantic.
class Array2D {
public:
    Array2D() = default;
    Array2D(int nx, int nv, double fill = 0.0)
        : nx_(nx), nv_(nv), data_(static_cast<std::size_t>(nx) * nv, fill)
    {}

    int nx() const noexcept { return nx_; }
    int nv() const noexcept { return nv_; }
    std::size_t size() const noexcept { return data_.size(); }

    double& operator()(int i, int j) noexcept { return data_[index(i, j)]; }
    double operator()(int i, int j) const noexcept { return data_[index(i, j)]; }

    /// Periodic access, any integer indices.
    double at_wrapped(int i, int j) const noexcept
    {
        return data_[index(wrap(i, nx_), wrap(j, nv_))];
    }

    double* row(int j) noexcept { return data_.data() + static_cast<std::size_t>(j) * nx_; }
    const double* row(int j) const noexcept
    {
        return data_.data() + static_cast<std::size_t>(j) * nx_;
    }

    std::vector<double>& values() noexcept { return data_; }
    const std::vector<double>& values() const noexcept { return data_; }

    friend bool operator==(const Array2D&, const Array2D&) = default;

private:
    std::size_t index(int i, int j) const noexcept
    {
        return static_cast<std::size_t>(j) * nx_ + static_cast<std::size_t>(i);
    }

    int nx_ = 0;
    int nv_ = 0;
    std::vector<double> data_;
};

/// Invalid configuration or arguments.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File or stream failure.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A Courant number exceeded the stability bound of a kernel.
class CflError : public std::runtime_error {
public:
    CflError(std::string where, double courant, double bound)
        : std::runtime_error(format(where, courant, bound)),
          where_(std::move(where)), courant_(courant), bound_(bound)
    {}

    const std::string& where() const noexcept { return where_; }
    double courant() const noexcept { return courant_; }
    double bound() const noexcept { return bound_; }

    /// Same violation with an outer context (operator, sub-step) prepended.
    CflError within(const std::string& context) const
    {
        return CflError(context + ": " + where_, courant_, bound_);
    }

private:
    static std::string format(const std::string& where, double courant, double bound);

    std::string where_;
    double courant_;
    double bound_;
};

} // namespace afvp
