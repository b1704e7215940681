#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <vector>

#include "groklab/matrix.hpp"

namespace groklab {

// Rows are points.
using PointCloud = RMat;

struct PcaResult {
    RMat projected;                          // n x k scores
    std::vector<double> explained_variance;  // nonincreasing, 1/n convention
    RMat components;                         // k x d, rows are unit vectors
    std::vector<double> mean;                // d
};

// Top-k principal components by deflated power iteration on the covariance
// (tolerance 1e-10, at most 10000 iterations per component). Sign fixed so
// the first coordinate above 1e-12 in magnitude is positive.
PcaResult pca_project(const PointCloud& cloud, std::size_t k);

// Fisher-Lee circular correlation magnitude between the given angles and the
// reference ring phi(x) = 2 pi x / p, over all pairs i < j.
double circular_correlation(std::span<const double> angles, std::uint32_t p);

// Mean over all ordered pairs (a, b) of |psi((a+b) mod p) - psi(a) psi(b)|
// after normalizing psi(x) = embed(x) / |embed(x)|.
double homomorphism_error(std::span<const std::complex<double>> embed, std::uint32_t p);

struct Bar {
    int dim = 0;
    double birth = 0.0;
    double death = std::numeric_limits<double>::infinity();

    double lifetime() const { return death - birth; }
};
using Barcode = std::vector<Bar>;

// Vietoris-Rips persistence of the Euclidean filtration up to H1 (clique
// complex through 2-simplices, boundary-matrix reduction over Z/2).
// Zero-length bars are dropped; bars come back sorted by lifetime, longest
// first, infinite H0 bars leading. Point count capped (complex size grows
// as n^3); exceeding the cap throws with a note to subsample.
Barcode vietoris_rips_persistence(const PointCloud& cloud, std::size_t cap = 256);

// Longest H1 lifetime in the barcode; 0 when no 1-dimensional bar exists.
double betti1_max_lifetime(const PointCloud& cloud, std::size_t cap = 256);

// Greedy farthest-point subsample of m points, seeded choice of the start.
PointCloud farthest_point_subsample(const PointCloud& cloud, std::size_t m,
                                    std::uint64_t seed);

// CSV with header "dim,birth,death"; infinite deaths serialize as "inf".
void write_barcode_csv(const std::filesystem::path& path, const Barcode& bars);

// Model-derived geometry: the point cloud is the realified prediction grid
// (one row per left operand), the ring angle of x is arg h(x, 0), and the
// embedding map is x -> h(x, 0).
PointCloud embedding_cloud(const CMat& W, std::uint32_t p);
std::vector<double> embedding_angles(const CMat& W, std::uint32_t p);
std::vector<std::complex<double>> embedding_map(const CMat& W, std::uint32_t p);

}  // namespace groklab
