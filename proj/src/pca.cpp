#include "epsball/pca.hpp"

#include <cmath>
#include <cstddef>

#include <Eigen/Dense>

#include "epsball/fsum.hpp"

namespace epsball {

std::vector<std::array<double, 2>> project_2d(const dataset& ds) {
    const std::size_t n = ds.size();
    const std::size_t d = ds.dim();

    std::vector<double> mean(d);
    for (std::size_t k = 0; k < d; ++k) {
        exact_sum s;
        for (std::size_t i = 0; i < n; ++i) s.add(ds[i].coords[k]);
        mean[k] = s.value() / static_cast<double>(n);
    }

    std::vector<std::array<double, 2>> out(n);
    if (d == 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = {ds[i].coords[0] - mean[0], 0.0};
        return out;
    }

    Eigen::MatrixXd centered(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < d; ++k)
            centered(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                ds[i].coords[k] - mean[k];

    const Eigen::MatrixXd cov = centered.transpose() * centered;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);

    // Eigenvalues come back ascending; the top two components are the last
    // columns. Sign is ambiguous, so each axis is flipped to make its
    // largest-magnitude loading positive.
    Eigen::VectorXd pc1 = solver.eigenvectors().col(static_cast<Eigen::Index>(d) - 1);
    Eigen::VectorXd pc2 = solver.eigenvectors().col(static_cast<Eigen::Index>(d) - 2);
    for (Eigen::VectorXd* pc : {&pc1, &pc2}) {
        Eigen::Index arg = 0;
        double best = 0.0;
        for (Eigen::Index k = 0; k < pc->size(); ++k)
            if (std::fabs((*pc)(k)) > best) {
                best = std::fabs((*pc)(k));
                arg = k;
            }
        if ((*pc)(arg) < 0.0) *pc = -*pc;
    }

    for (std::size_t i = 0; i < n; ++i) {
        const auto row = centered.row(static_cast<Eigen::Index>(i));
        out[i] = {row.dot(pc1), row.dot(pc2)};
    }
    return out;
}

} // namespace epsball
