#include "sphericity/populations.hpp"

#include <cmath>

#include "sphericity/errors.hpp"

namespace sphericity {

const char* entry_dist_name(EntryDist d) {
    return d == EntryDist::StdNormal ? "std-normal" : "centered-gamma-4-2";
}

double gamma_draw(RandomStream& stream) {
    return stream.next_gamma42_centered();
}

DataMatrix sample(const PopulationSpec& spec, Eigen::Index p, Eigen::Index n, SeedSpec seed) {
    if (p < 1 || n < 1) {
        throw Error(ErrorCode::InvalidArgument, "sample: p and n must be >= 1");
    }
    RandomStream stream(seed.master_seed, seed.replicate_index);
    Eigen::MatrixXd z(p, n);
    if (spec.entry_dist == EntryDist::StdNormal) {
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < p; ++i) z(i, j) = stream.next_gaussian();
    } else {
        for (Eigen::Index j = 0; j < n; ++j)
            for (Eigen::Index i = 0; i < p; ++i) z(i, j) = stream.next_gamma42_centered();
    }

    if (sigma_is_diagonal(spec.sigma)) {
        SigmaSpec sized = spec.sigma;
        sized.p = p;
        const std::vector<double> diag = sigma_diagonal(sized);
        if (Eigen::Index(diag.size()) != p) {
            throw Error(ErrorCode::InvalidArgument, "sample: Sigma dimension does not match p");
        }
        for (Eigen::Index i = 0; i < p; ++i) {
            const double s = std::sqrt(diag[std::size_t(i)]);
            z.row(i) *= s;
        }
        return DataMatrix(std::move(z));
    }

    const auto& m = std::get<ExplicitSPD>(spec.sigma.kind).matrix;
    if (m.rows() != p) {
        throw Error(ErrorCode::InvalidArgument, "sample: Sigma dimension does not match p");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    if (es.eigenvalues().minCoeff() <= 0.0) {
        throw Error(ErrorCode::NonPositiveDiagonal, "sample: ExplicitSPD is not positive definite");
    }
    const Eigen::MatrixXd half =
        es.eigenvectors() * es.eigenvalues().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
    return DataMatrix(half * z);
}

}  // namespace sphericity
