#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fedosov/multi_index.hpp"

namespace fedosov {

/// Division by a jet with vanishing constant term, sqrt of a non-positive one, etc.
class SingularEvaluation : public std::runtime_error {
  public:
    SingularEvaluation(const std::string& op, double constant_term)
        : std::runtime_error("singular evaluation in '" + op +
                             "' (constant term = " + std::to_string(constant_term) + ")") {}
};

/// Truncated multivariate Taylor expansion at a point: coefficient c[alpha] is
/// the Taylor coefficient, i.e. d^alpha f / alpha! at the center. Arithmetic is
/// exact in the coefficients up to roundoff; nothing above the truncation
/// order is ever read or written.
class Jet {
  public:
    Jet() = default;

    Jet(int dim, int order, double value = 0.0)
        : tab_(MultiIndexTable::get(dim, order)), c_(tab_->size(), 0.0) {
        c_[0] = value;
    }

    static Jet constant(int dim, int order, double value) { return Jet(dim, order, value); }

    static Jet variable(int dim, int order, int axis, double value) {
        Jet j(dim, order, value);
        if (order >= 1) {
            int alpha[16] = {0};
            alpha[axis] = 1;
            j.c_[j.tab_->rank(std::span<const int>(alpha, dim))] = 1.0;
        }
        return j;
    }

    bool empty() const { return !tab_; }
    int dim() const { return tab_ ? tab_->dim() : 0; }
    int order() const { return tab_ ? tab_->order() : -1; }
    double value() const { return c_.empty() ? 0.0 : c_[0]; }
    const std::vector<double>& coeffs() const { return c_; }
    double coeff(int pos) const { return c_[pos]; }
    const MultiIndexTable& table() const { return *tab_; }

    /// d^alpha f at the center, i.e. coeff[alpha] * alpha!.
    double partial(std::span<const int> alpha) const {
        int g = 0;
        double fac = 1.0;
        for (int a : alpha) {
            g += a;
            fac *= factorial(a);
        }
        if (g > order()) throw std::out_of_range("Jet::partial: |alpha| exceeds jet order");
        return c_[tab_->rank(alpha)] * fac;
    }

    Jet truncated(int new_order) const {
        if (new_order >= order()) return *this;
        Jet out(dim(), new_order);
        std::copy(c_.begin(), c_.begin() + out.tab_->size(), out.c_.begin());
        return out;
    }

    /// Partial derivative along one axis; order drops by one.
    Jet derivative(int axis) const {
        if (order() < 1) throw std::out_of_range("Jet::derivative: order 0 jet");
        Jet out(dim(), order() - 1);
        const int n = out.tab_->size();
        int tmp[16];
        for (int p = 0; p < n; ++p) {
            auto a = out.tab_->index(p);
            for (int j = 0; j < dim(); ++j) tmp[j] = a[j];
            tmp[axis] += 1;
            out.c_[p] = c_[tab_->rank(std::span<const int>(tmp, dim()))] * tmp[axis];
        }
        return out;
    }

    /// Re-embed into a jet of more variables: variable s becomes variable offset+s.
    Jet promoted(int new_dim, int offset) const {
        Jet out(new_dim, order());
        int tmp[16];
        for (int p = 0; p < tab_->size(); ++p) {
            auto a = tab_->index(p);
            for (int j = 0; j < new_dim; ++j) tmp[j] = 0;
            for (int j = 0; j < dim(); ++j) tmp[offset + j] = a[j];
            out.c_[out.tab_->rank(std::span<const int>(tmp, new_dim))] = c_[p];
        }
        return out;
    }

    Jet operator-() const {
        Jet out = *this;
        for (double& v : out.c_) v = -v;
        return out;
    }

    Jet& operator+=(const Jet& o) { return apply(o, +1.0); }
    Jet& operator-=(const Jet& o) { return apply(o, -1.0); }
    Jet& operator+=(double s) { c_[0] += s; return *this; }
    Jet& operator-=(double s) { c_[0] -= s; return *this; }
    Jet& operator*=(double s) {
        for (double& v : c_) v *= s;
        return *this;
    }
    Jet& operator/=(double s) { return *this *= 1.0 / s; }

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator+(Jet a, double s) { return a += s; }
    friend Jet operator+(double s, Jet a) { return a += s; }
    friend Jet operator-(Jet a, double s) { return a -= s; }
    friend Jet operator-(double s, const Jet& a) { return -a + s; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator/(Jet a, double s) { return a *= 1.0 / s; }

    friend Jet operator*(const Jet& a, const Jet& b) {
        check_dims(a, b);
        const int K = std::min(a.order(), b.order());
        Jet out(a.dim(), K);
        const auto& ta = *a.tab_;
        const auto& tb = *b.tab_;
        const int na = ta.grade_end(std::min(K, ta.order()));
        for (int pa = 0; pa < na; ++pa) {
            const double va = a.c_[pa];
            if (va == 0.0) continue;
            const int gb_max = K - ta.grade(pa);
            const int nb = tb.grade_end(gb_max);
            for (int pb = 0; pb < nb; ++pb) {
                const double vb = b.c_[pb];
                if (vb == 0.0) continue;
                // positions coincide across tables of the same dim for shared grades
                out.c_[sum_rank(out, ta, pa, tb, pb)] += va * vb;
            }
        }
        return out;
    }

    friend Jet operator/(const Jet& a, const Jet& b) {
        check_dims(a, b);
        if (b.value() == 0.0) throw SingularEvaluation("div", b.value());
        const int K = std::min(a.order(), b.order());
        Jet out(a.dim(), K);
        divide_into(a, b, out);
        return out;
    }

    friend Jet operator/(double s, const Jet& b) {
        Jet a(b.dim(), b.order(), s);
        return a / b;
    }

    friend Jet sqrt(const Jet& a) {
        if (a.value() <= 0.0) throw SingularEvaluation("sqrt", a.value());
        const int K = a.order();
        Jet out(a.dim(), K);
        const auto& t = *out.tab_;
        out.c_[0] = std::sqrt(a.value());
        const double inv2s0 = 1.0 / (2.0 * out.c_[0]);
        int beta[16], rem[16];
        for (int p = 1; p < t.size(); ++p) {
            auto alpha = t.index(p);
            // sum over 0 < beta < alpha (componentwise) of s[beta] s[alpha-beta]
            double acc = 0.0;
            sub_index_loop(t, alpha, beta, rem, [&](int pb, int pr) {
                if (pb == 0 || pb == p) return;
                acc += out.c_[pb] * out.c_[pr];
            });
            out.c_[p] = (a.c_[p] - acc) * inv2s0;
        }
        return out;
    }

  private:
    static void check_dims(const Jet& a, const Jet& b) {
        if (a.empty() || b.empty()) throw std::logic_error("Jet: operation on empty jet");
        if (a.dim() != b.dim()) throw std::logic_error("Jet: dimension mismatch");
    }

    Jet& apply(const Jet& o, double sign) {
        check_dims(*this, o);
        if (o.order() < order()) *this = truncated(o.order());
        const int n = tab_->size();
        for (int p = 0; p < n; ++p) c_[p] += sign * o.c_[p];
        return *this;
    }

    static int sum_rank(const Jet& out, const MultiIndexTable& ta, int pa,
                        const MultiIndexTable& tb, int pb) {
        auto a = ta.index(pa);
        auto b = tb.index(pb);
        int tmp[16];
        for (int j = 0; j < out.dim(); ++j) tmp[j] = a[j] + b[j];
        return out.tab_->rank(std::span<const int>(tmp, out.dim()));
    }

    // Visit all beta <= alpha componentwise; f(rank(beta), rank(alpha-beta)).
    template <class F>
    static void sub_index_loop(const MultiIndexTable& t, std::span<const int> alpha, int* beta,
                               int* rem, F&& f) {
        const int d = t.dim();
        for (int j = 0; j < d; ++j) beta[j] = 0;
        while (true) {
            for (int j = 0; j < d; ++j) rem[j] = alpha[j] - beta[j];
            f(t.rank(std::span<const int>(beta, d)), t.rank(std::span<const int>(rem, d)));
            int j = 0;
            while (j < d && beta[j] == alpha[j]) beta[j++] = 0;
            if (j == d) break;
            ++beta[j];
        }
    }

    static void divide_into(const Jet& a, const Jet& b, Jet& out) {
        const auto& t = *out.tab_;
        const double inv_b0 = 1.0 / b.value();
        int beta[16], rem[16];
        for (int p = 0; p < t.size(); ++p) {
            auto alpha = t.index(p);
            double acc = 0.0;
            sub_index_loop(t, alpha, beta, rem, [&](int pb, int pr) {
                if (pb == 0) return;
                acc += b.c_[pb] * out.c_[pr];
            });
            out.c_[p] = (a.c_[p] - acc) * inv_b0;
        }
    }

    std::shared_ptr<const MultiIndexTable> tab_;
    std::vector<double> c_;
};

/// Evaluate a generic scalar expression at jet-seeded chart variables.
/// F is callable on std::vector<Jet> (typically a generic lambda shared with
/// the plain-double evaluation path).
template <class F>
Jet evaluate_jet(F&& expr, std::span<const double> center, int order) {
    const int dim = static_cast<int>(center.size());
    std::vector<Jet> x;
    x.reserve(dim);
    for (int i = 0; i < dim; ++i) x.push_back(Jet::variable(dim, order, i, center[i]));
    return expr(x);
}

}  // namespace fedosov
