#pragma once

#include <Eigen/Dense>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fedosov/jet.hpp"
#include "fedosov/tensor.hpp"

namespace fedosov {

class DomainError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Coordinate-chart description of a symplectic manifold with connection:
/// Christoffel symbols Gamma^k_{ij} and symplectic components omega_{ij},
/// evaluable at plain points and (for arbitrary-order derivatives) at
/// jet-seeded points. Evaluation closures must be reentrant.
struct ChartModel {
    int dim = 0;
    std::string name;
    std::function<bool(const Eigen::VectorXd&)> in_domain;
    // gamma: Tensor dims {d,d,d} as (k,i,j); omega: d x d matrix
    std::function<void(const Eigen::VectorXd&, Tensor<double>&, Eigen::MatrixXd&)> eval_point;
    // jets of order K at a center; gamma/omega entries are Jets in the chart variables
    std::function<void(const Eigen::VectorXd&, int, Tensor<Jet>&, Tensor<Jet>&)> eval_jets;

    Tensor<double> gamma_at(const Eigen::VectorXd& x) const {
        Tensor<double> g;
        Eigen::MatrixXd w;
        eval_point(x, g, w);
        return g;
    }

    Eigen::MatrixXd omega_at(const Eigen::VectorXd& x) const {
        Tensor<double> g;
        Eigen::MatrixXd w;
        eval_point(x, g, w);
        return w;
    }

    void require_in_domain(const Eigen::VectorXd& x) const {
        if (in_domain && !in_domain(x))
            throw DomainError("point outside chart domain of model '" + name + "'");
    }
};

namespace detail {

inline std::size_t g3(int d, int k, int i, int j) {
    return (static_cast<std::size_t>(k) * d + i) * d + j;
}

}  // namespace detail

/// Build a ChartModel from one generic evaluator usable with any scalar type.
/// Eval must be callable as ev(const std::vector<S>&, std::vector<S>& gamma,
/// std::vector<S>& omega) for S = double and S = Jet, filling gamma (d^3,
/// layout (k,i,j)) and omega (d^2, layout (i,j)).
template <class Eval, class Domain>
ChartModel make_chart_model(int dim, std::string name, Domain domain, Eval ev) {
    ChartModel m;
    m.dim = dim;
    m.name = std::move(name);
    m.in_domain = std::move(domain);
    m.eval_point = [dim, ev](const Eigen::VectorXd& x, Tensor<double>& G, Eigen::MatrixXd& Om) {
        std::vector<double> xv(x.data(), x.data() + dim);
        std::vector<double> g(static_cast<std::size_t>(dim) * dim * dim, 0.0);
        std::vector<double> w(static_cast<std::size_t>(dim) * dim, 0.0);
        ev(xv, g, w);
        G = Tensor<double>::cube(3, dim);
        Om.resize(dim, dim);
        for (int k = 0; k < dim; ++k)
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) G(k, i, j) = g[detail::g3(dim, k, i, j)];
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) Om(i, j) = w[static_cast<std::size_t>(i) * dim + j];
    };
    m.eval_jets = [dim, ev](const Eigen::VectorXd& c, int order, Tensor<Jet>& G, Tensor<Jet>& Om) {
        std::vector<Jet> xv;
        xv.reserve(dim);
        for (int i = 0; i < dim; ++i) xv.push_back(Jet::variable(dim, order, i, c[i]));
        const Jet zero(dim, order, 0.0);
        std::vector<Jet> g(static_cast<std::size_t>(dim) * dim * dim, zero);
        std::vector<Jet> w(static_cast<std::size_t>(dim) * dim, zero);
        ev(xv, g, w);
        G = Tensor<Jet>::cube(3, dim);
        Om = Tensor<Jet>::cube(2, dim);
        for (int k = 0; k < dim; ++k)
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j) G(k, i, j) = g[detail::g3(dim, k, i, j)];
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) Om(i, j) = w[static_cast<std::size_t>(i) * dim + j];
    };
    return m;
}

}  // namespace fedosov
