#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "qutv/qfactor.hpp"
#include "qutv/qsketch.hpp"
#include "qutv/qtensor.hpp"
#include "qutv/qtutv.hpp"
#include "qutv/utv.hpp"

namespace qutv {

// Color raster as a pure quaternion matrix: pixel (R,G,B) maps to
// (0, R, G, B) with channel values kept in [0, 255], no normalization.
// The w plane of a loaded image is exactly zero.

// Binary PPM (P6, maxval <= 255).
QMatrix load_ppm(const std::string& path);
void save_ppm(const QMatrix& img, const std::string& path);

// Raw planar RGB8 (all R bytes, then G, then B; row-major planes).
QMatrix load_raw_rgb8(const std::string& path, std::size_t rows, std::size_t cols);

// Any image by extension/magic; raw files need explicit dims (or a
// "<path>.dims" sidecar holding "rows cols").
QMatrix load_image(const std::string& path, std::size_t rows = 0, std::size_t cols = 0);

// Stacks same-sized frames into rows x cols x f; FrameSizeMismatch otherwise.
QTensor load_frames(const std::vector<std::string>& paths);

// Dense quaternion matrix blob: magic "QMAT1", u64 rows, u64 cols, then
// rows*cols*4 little-endian float64 (w,x,y,z) row-major.
void write_qmat(const QMatrix& m, const std::string& path);
QMatrix read_qmat(const std::string& path);

// Dense quaternion tensor blob: magic "QTEN1", u64 order, order u64 dims,
// then entries in frontal-slice-major order, same entry encoding.
void write_qten(const QTensor& t, const std::string& path);
QTensor read_qten(const std::string& path);

// Factor bundle: one-line JSON header (magic QBUN1, version, kind, block
// roles, meta) followed by the blocks as concatenated QMAT1/QTEN1 blobs.
// Matrices and scalars round-trip losslessly.
struct FactorBundle {
  std::string kind;  // "qr" | "urv" | "ulv" | "svd" | "cor" | "turv" | "tsvd" | "tcor"
  std::vector<std::pair<std::string, QMatrix>> matrices;
  std::vector<std::pair<std::string, QTensor>> tensors;
  nlohmann::json meta;
};

void save_bundle(const FactorBundle& b, const std::string& path);
FactorBundle load_bundle(const std::string& path);

FactorBundle to_bundle(const QRFactors& f);
FactorBundle to_bundle(const UTVFactors& f);
FactorBundle to_bundle(const SVDFactors& f);
FactorBundle to_bundle(const CoRFactors& f);
FactorBundle to_bundle(const TensorUTVFactors& f);
FactorBundle to_bundle(const TensorCoRFactors& f);

QRFactors qr_from_bundle(const FactorBundle& b);
UTVFactors utv_from_bundle(const FactorBundle& b);
SVDFactors svd_from_bundle(const FactorBundle& b);
CoRFactors cor_from_bundle(const FactorBundle& b);
TensorUTVFactors tutv_from_bundle(const FactorBundle& b);
TensorCoRFactors tcor_from_bundle(const FactorBundle& b);

}  // namespace qutv
