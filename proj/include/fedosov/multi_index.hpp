#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <vector>

namespace fedosov {

// Pascal triangle, doubles are exact for the sizes used here (n <= 64).
inline double binomial(int n, int k) {
    if (k < 0 || k > n || n < 0) return 0.0;
    static const auto table = [] {
        constexpr int N = 64;
        std::vector<std::vector<double>> t(N + 1);
        for (int i = 0; i <= N; ++i) {
            t[i].resize(i + 1);
            t[i][0] = t[i][i] = 1.0;
            for (int j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
        }
        return t;
    }();
    if (n >= static_cast<int>(table.size()))
        throw std::out_of_range("binomial: n too large");
    return table[n][k];
}

inline std::int64_t binomial_i(int n, int k) {
    return static_cast<std::int64_t>(binomial(n, k));
}

inline double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

/// Enumeration of all multi-indices alpha in N^dim with |alpha| <= order,
/// laid out grade by grade (within a grade: first component descending).
/// Positions are stable and computable in O(dim) via combinatorial ranking.
class MultiIndexTable {
  public:
    MultiIndexTable(int dim, int order) : dim_(dim), order_(order) {
        if (dim < 1 || order < 0) throw std::invalid_argument("MultiIndexTable: bad dim/order");
        grade_off_.resize(order + 2, 0);
        std::vector<int> alpha(dim, 0);
        for (int g = 0; g <= order; ++g) {
            grade_off_[g] = static_cast<int>(flat_.size()) / dim;
            emit(alpha, 0, g);
        }
        grade_off_[order + 1] = static_cast<int>(flat_.size()) / dim;
        grades_.resize(size());
        for (int g = 0; g <= order; ++g)
            for (int p = grade_off_[g]; p < grade_off_[g + 1]; ++p) grades_[p] = g;
    }

    int dim() const { return dim_; }
    int order() const { return order_; }
    int size() const { return static_cast<int>(flat_.size()) / dim_; }
    int grade(int pos) const { return grades_[pos]; }
    int grade_begin(int g) const { return grade_off_[g]; }
    int grade_end(int g) const { return grade_off_[g + 1]; }

    std::span<const int> index(int pos) const {
        return {flat_.data() + static_cast<std::size_t>(pos) * dim_, static_cast<std::size_t>(dim_)};
    }

    /// Position of alpha (must satisfy |alpha| <= order).
    int rank(std::span<const int> alpha) const {
        int g = 0;
        for (int a : alpha) g += a;
        int r = grade_off_[g];
        int s = g;
        for (int j = 0; j < dim_ - 1; ++j) {
            const int k = dim_ - 1 - j;  // slots after j
            const int t = s - alpha[j] - 1;
            if (t >= 0) r += static_cast<int>(binomial(t + k, k));
            s -= alpha[j];
        }
        return r;
    }

    /// Position of index(pa) + index(pb); grades must sum to <= order.
    int rank_sum(int pa, int pb) const {
        auto a = index(pa);
        auto b = index(pb);
        int tmp[16];
        for (int j = 0; j < dim_; ++j) tmp[j] = a[j] + b[j];
        return rank(std::span<const int>(tmp, dim_));
    }

    static std::shared_ptr<const MultiIndexTable> get(int dim, int order) {
        static std::mutex mu;
        static std::map<std::pair<int, int>, std::shared_ptr<const MultiIndexTable>> cache;
        std::lock_guard<std::mutex> lock(mu);
        auto& slot = cache[{dim, order}];
        if (!slot) slot = std::make_shared<MultiIndexTable>(dim, order);
        return slot;
    }

  private:
    void emit(std::vector<int>& alpha, int j, int remaining) {
        if (j == dim_ - 1) {
            alpha[j] = remaining;
            flat_.insert(flat_.end(), alpha.begin(), alpha.end());
            return;
        }
        for (int c = remaining; c >= 0; --c) {
            alpha[j] = c;
            emit(alpha, j + 1, remaining - c);
        }
    }

    int dim_;
    int order_;
    std::vector<int> flat_;
    std::vector<int> grades_;
    std::vector<int> grade_off_;
};

}  // namespace fedosov
