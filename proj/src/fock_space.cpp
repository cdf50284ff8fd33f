#include "bergman/fock_space.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace bergman {

FockSector build_sector(int m, int N, int M) {
  if (m != 1 && m != 2)
    throw ConfigError("build_sector: m must be 1 or 2, got " +
                      std::to_string(m));
  if (N < m + 1)
    throw ConfigError("build_sector: discrete-series bound requires N >= m+1 "
                      "(N = " +
                      std::to_string(N) + ", m = " + std::to_string(m) + ")");
  if (M < 0) throw ConfigError("build_sector: M must be >= 0");

  FockSector s;
  s.m = m;
  s.N = N;
  s.M = M;
  for (int k = 0; k <= M; ++k) {
    if (m == 1) {
      s.states.push_back({k, 0});
    } else {
      for (int m1 = 0; m1 <= k; ++m1) s.states.push_back({m1, k - m1});
    }
  }
  return s;
}

SectorOperator bilinear_matrix(const FockSector& sector, Bilinear kind,
                               int alpha, int beta) {
  const int m = sector.m;
  if (alpha < 0 || alpha >= m || (kind == Bilinear::ADagA &&
                                  (beta < 0 || beta >= m)))
    throw DomainError("bilinear_matrix: oscillator index out of range");

  const int dim = sector.dim();
  MatrixXc mat = MatrixXc::Zero(dim, dim);
  for (int j = 0; j < dim; ++j) {
    std::array<int, 2> occ = sector.states[j];
    const int n = sector.b_quanta(j);
    switch (kind) {
      case Bilinear::ADagA: {
        if (alpha == beta) {
          mat(j, j) = static_cast<double>(occ[alpha]);
        } else if (occ[beta] > 0) {
          // a^†_alpha a_beta : sqrt(m_beta) sqrt(m_alpha + 1)
          std::array<int, 2> to = occ;
          --to[beta];
          ++to[alpha];
          const int i = sector.index_of(to[0], to[1]);
          mat(i, j) = std::sqrt(static_cast<double>(occ[beta])) *
                      std::sqrt(static_cast<double>(occ[alpha] + 1));
        }
        break;
      }
      case Bilinear::ADagBDag: {
        std::array<int, 2> to = occ;
        ++to[alpha];
        const int i = sector.index_of(to[0], to[1]);
        if (i >= 0)  // entries reaching layer M+1 are dropped
          mat(i, j) = std::sqrt(static_cast<double>(occ[alpha] + 1)) *
                      std::sqrt(static_cast<double>(n + 1));
        break;
      }
      case Bilinear::BA: {
        if (occ[alpha] > 0) {
          std::array<int, 2> to = occ;
          --to[alpha];
          const int i = sector.index_of(to[0], to[1]);
          mat(i, j) = std::sqrt(static_cast<double>(occ[alpha])) *
                      std::sqrt(static_cast<double>(n));
        }
        break;
      }
      case Bilinear::BBDag: {
        mat(j, j) = static_cast<double>(n + 1);
        break;
      }
    }
  }
  return SectorOperator{sector, std::move(mat)};
}

SectorOperator number_operator(const FockSector& sector) {
  const int dim = sector.dim();
  MatrixXc mat = MatrixXc::Zero(dim, dim);
  for (int j = 0; j < dim; ++j)
    mat(j, j) = static_cast<double>(sector.b_quanta(j) - sector.layer(j));
  return SectorOperator{sector, std::move(mat)};
}

MatrixXc interior_projector(const FockSector& sector) {
  const int dim = sector.dim();
  MatrixXc p = MatrixXc::Zero(dim, dim);
  for (int j = 0; j < dim; ++j)
    if (sector.layer(j) <= sector.M - 1) p(j, j) = 1.0;
  return p;
}

nlohmann::json sector_to_json(const FockSector& sector) {
  return nlohmann::json{{"m", sector.m},
                        {"N", sector.N},
                        {"M", sector.M},
                        {"dim", sector.dim()}};
}

}  // namespace bergman
