#pragma once

#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace fedosov {

/// Minimal dense row-major tensor of arbitrary rank.
template <class T>
class Tensor {
  public:
    Tensor() = default;

    explicit Tensor(std::vector<int> dims, const T& fill = T())
        : dims_(std::move(dims)) {
        strides_.resize(dims_.size());
        std::size_t s = 1;
        for (int k = static_cast<int>(dims_.size()) - 1; k >= 0; --k) {
            strides_[k] = s;
            s *= static_cast<std::size_t>(dims_[k]);
        }
        data_.assign(s, fill);
    }

    /// Rank-r tensor with every dimension equal to d.
    static Tensor cube(int rank, int d, const T& fill = T()) {
        return Tensor(std::vector<int>(rank, d), fill);
    }

    int rank() const { return static_cast<int>(dims_.size()); }
    const std::vector<int>& dims() const { return dims_; }
    std::size_t size() const { return data_.size(); }
    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }
    T& flat(std::size_t i) { return data_[i]; }
    const T& flat(std::size_t i) const { return data_[i]; }
    std::size_t stride(int axis) const { return strides_[axis]; }

    template <class... I>
    T& operator()(I... idx) {
        return data_[offset(idx...)];
    }
    template <class... I>
    const T& operator()(I... idx) const {
        return data_[offset(idx...)];
    }

    std::size_t offset_of(const std::vector<int>& idx) const {
        std::size_t o = 0;
        for (std::size_t k = 0; k < idx.size(); ++k) o += strides_[k] * idx[k];
        return o;
    }

    void decode(std::size_t flat_index, std::vector<int>& idx) const {
        idx.resize(dims_.size());
        for (std::size_t k = 0; k < dims_.size(); ++k) {
            idx[k] = static_cast<int>(flat_index / strides_[k]);
            flat_index %= strides_[k];
        }
    }

  private:
    template <class... I>
    std::size_t offset(I... idx) const {
        const int ii[] = {static_cast<int>(idx)...};
        std::size_t o = 0;
        for (std::size_t k = 0; k < sizeof...(idx); ++k) o += strides_[k] * ii[k];
        return o;
    }

    std::vector<int> dims_;
    std::vector<std::size_t> strides_;
    std::vector<T> data_;
};

template <class T>
double max_abs(const Tensor<T>& t) {
    double m = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) m = std::max(m, std::abs(t.flat(i)));
    return m;
}

}  // namespace fedosov
