#include "qutv/media_io.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <cstring>
#include <fstream>
#include <string_view>

#include "qutv/errors.hpp"

namespace qutv {

namespace {

// All binary blobs are little-endian on every host.
void put_u64(std::ostream& out, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

void put_f64(std::ostream& out, double d) {
  put_u64(out, std::bit_cast<std::uint64_t>(d));
}

std::uint64_t get_u64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  if (!in) throw ParseError("blob truncated while reading u64");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_u64(in)); }

void expect_magic(std::istream& in, const char* magic) {
  char buf[8] = {};
  const std::size_t len = std::strlen(magic);
  in.read(buf, static_cast<std::streamsize>(len));
  if (!in || std::memcmp(buf, magic, len) != 0)
    throw FormatVersionMismatch(std::string("expected magic '") + magic + "'");
}

constexpr std::uint64_t kMaxEntries = 1ull << 30;

void encode_qmat(std::ostream& out, const QMatrix& m) {
  out.write("QMAT1", 5);
  put_u64(out, m.rows());
  put_u64(out, m.cols());
  for (const Quaternion& q : m.data()) {
    put_f64(out, q.w);
    put_f64(out, q.x);
    put_f64(out, q.y);
    put_f64(out, q.z);
  }
}

QMatrix decode_qmat(std::istream& in) {
  expect_magic(in, "QMAT1");
  const std::uint64_t rows = get_u64(in), cols = get_u64(in);
  if (rows * cols > kMaxEntries) throw ParseError("QMAT1 blob implausibly large");
  QMatrix m(rows, cols);
  for (Quaternion& q : m.data()) {
    q.w = get_f64(in);
    q.x = get_f64(in);
    q.y = get_f64(in);
    q.z = get_f64(in);
  }
  return m;
}

void encode_qten(std::ostream& out, const QTensor& t) {
  out.write("QTEN1", 5);
  put_u64(out, t.order());
  for (std::size_t d : t.dims()) put_u64(out, d);
  for (const Quaternion& q : t.data()) {
    put_f64(out, q.w);
    put_f64(out, q.x);
    put_f64(out, q.y);
    put_f64(out, q.z);
  }
}

QTensor decode_qten(std::istream& in) {
  expect_magic(in, "QTEN1");
  const std::uint64_t order = get_u64(in);
  if (order < 3 || order > 16) throw ParseError("QTEN1 order out of range");
  std::vector<std::size_t> dims(order);
  std::uint64_t total = 1;
  for (auto& d : dims) {
    d = get_u64(in);
    total *= std::max<std::uint64_t>(d, 1);
    if (total > kMaxEntries) throw ParseError("QTEN1 blob implausibly large");
  }
  QTensor t(dims);
  for (Quaternion& q : t.data()) {
    q.w = get_f64(in);
    q.x = get_f64(in);
    q.y = get_f64(in);
    q.z = get_f64(in);
  }
  return t;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

QMatrix load_ppm(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string magic;
  in >> magic;
  if (magic != "P6") throw ParseError("'" + path + "': not a binary PPM (P6)");
  // Header tokens may be separated by whitespace and '#' comments.
  auto next_int = [&](const char* what) -> long {
    long v = -1;
    while (in) {
      int c = in.peek();
      if (c == '#') {
        std::string junk;
        std::getline(in, junk);
      } else if (std::isspace(c)) {
        in.get();
      } else {
        in >> v;
        break;
      }
    }
    if (!in || v < 0) throw ParseError("'" + path + "': bad PPM " + std::string(what));
    return v;
  };
  const long w = next_int("width");
  const long h = next_int("height");
  const long maxval = next_int("maxval");
  if (w <= 0 || h <= 0) throw ParseError("'" + path + "': bad PPM dimensions");
  if (maxval <= 0 || maxval > 255)
    throw ParseError("'" + path + "': unsupported PPM maxval " + std::to_string(maxval));
  in.get();  // single whitespace byte before the raster
  std::vector<unsigned char> raster(static_cast<std::size_t>(w) * h * 3);
  in.read(reinterpret_cast<char*>(raster.data()),
          static_cast<std::streamsize>(raster.size()));
  if (!in) throw ParseError("'" + path + "': PPM raster truncated");
  QMatrix img(static_cast<std::size_t>(h), static_cast<std::size_t>(w));
  for (std::size_t i = 0; i < img.rows(); ++i)
    for (std::size_t j = 0; j < img.cols(); ++j) {
      const unsigned char* px = &raster[(i * img.cols() + j) * 3];
      img(i, j) = Quaternion(0.0, px[0], px[1], px[2]);
    }
  return img;
}

void save_ppm(const QMatrix& img, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "P6\n" << img.cols() << " " << img.rows() << "\n255\n";
  auto byte = [](double v) {
    const double r = std::round(v);
    return static_cast<unsigned char>(r < 0.0 ? 0.0 : r > 255.0 ? 255.0 : r);
  };
  std::vector<unsigned char> raster(img.rows() * img.cols() * 3);
  for (std::size_t i = 0; i < img.rows(); ++i)
    for (std::size_t j = 0; j < img.cols(); ++j) {
      const Quaternion& q = img(i, j);
      unsigned char* px = &raster[(i * img.cols() + j) * 3];
      px[0] = byte(q.x);
      px[1] = byte(q.y);
      px[2] = byte(q.z);
    }
  out.write(reinterpret_cast<const char*>(raster.data()),
            static_cast<std::streamsize>(raster.size()));
  if (!out) throw IoError("failed writing '" + path + "'");
}

QMatrix load_raw_rgb8(const std::string& path, std::size_t rows, std::size_t cols) {
  std::ifstream in = open_in(path);
  const std::size_t plane = rows * cols;
  std::vector<unsigned char> bytes(plane * 3);
  in.read(reinterpret_cast<char*>(bytes.data()),
          static_cast<std::streamsize>(bytes.size()));
  if (!in) throw ParseError("'" + path + "': raw RGB8 shorter than " +
                            std::to_string(rows) + "x" + std::to_string(cols));
  QMatrix img(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      img(i, j) = Quaternion(0.0, bytes[i * cols + j], bytes[plane + i * cols + j],
                             bytes[2 * plane + i * cols + j]);
  return img;
}

QMatrix load_image(const std::string& path, std::size_t rows, std::size_t cols) {
  {
    std::ifstream probe = open_in(path);
    char m[5] = {};
    probe.read(m, 5);
    if (probe.gcount() >= 2 && m[0] == 'P' && m[1] == '6') return load_ppm(path);
    if (probe.gcount() == 5 && std::string_view(m, 5) == "QMAT1")
      return read_qmat(path);
  }
  if (rows == 0 || cols == 0) {
    std::ifstream dims(path + ".dims");
    if (!dims)
      throw ParseError("'" + path + "': raw image needs dims or a .dims sidecar");
    dims >> rows >> cols;
    if (!dims || rows == 0 || cols == 0)
      throw ParseError("'" + path + ".dims': expected 'rows cols'");
  }
  return load_raw_rgb8(path, rows, cols);
}

QTensor load_frames(const std::vector<std::string>& paths) {
  if (paths.empty()) throw BadParams("load_frames: no frames given");
  std::vector<QMatrix> frames;
  frames.reserve(paths.size());
  for (const std::string& p : paths) {
    frames.push_back(load_image(p));
    if (frames.back().rows() != frames.front().rows() ||
        frames.back().cols() != frames.front().cols())
      throw FrameSizeMismatch("'" + p + "' is " + std::to_string(frames.back().rows()) +
                              "x" + std::to_string(frames.back().cols()) +
                              ", first frame is " +
                              std::to_string(frames.front().rows()) + "x" +
                              std::to_string(frames.front().cols()));
  }
  QTensor video({frames.front().rows(), frames.front().cols(), frames.size()});
  for (std::size_t k = 0; k < frames.size(); ++k) video.set_slice(k, frames[k]);
  return video;
}

void write_qmat(const QMatrix& m, const std::string& path) {
  std::ofstream out = open_out(path);
  encode_qmat(out, m);
  if (!out) throw IoError("failed writing '" + path + "'");
}

QMatrix read_qmat(const std::string& path) {
  std::ifstream in = open_in(path);
  return decode_qmat(in);
}

void write_qten(const QTensor& t, const std::string& path) {
  std::ofstream out = open_out(path);
  encode_qten(out, t);
  if (!out) throw IoError("failed writing '" + path + "'");
}

QTensor read_qten(const std::string& path) {
  std::ifstream in = open_in(path);
  return decode_qten(in);
}

void save_bundle(const FactorBundle& b, const std::string& path) {
  nlohmann::json header;
  header["magic"] = "QBUN1";
  header["version"] = 1;
  header["kind"] = b.kind;
  auto roles = nlohmann::json::array();
  for (const auto& [role, m] : b.matrices) roles.push_back(role);
  header["matrices"] = roles;
  roles = nlohmann::json::array();
  for (const auto& [role, t] : b.tensors) roles.push_back(role);
  header["tensors"] = roles;
  header["meta"] = b.meta;

  std::ofstream out = open_out(path);
  out << header.dump() << "\n";
  for (const auto& [role, m] : b.matrices) encode_qmat(out, m);
  for (const auto& [role, t] : b.tensors) encode_qten(out, t);
  if (!out) throw IoError("failed writing '" + path + "'");
}

FactorBundle load_bundle(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("'" + path + "': empty bundle");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("'" + path + "': bad bundle header: " + e.what());
  }
  if (header.value("magic", "") != std::string("QBUN1") ||
      header.value("version", 0) != 1)
    throw FormatVersionMismatch("'" + path + "': unknown bundle magic/version");
  FactorBundle b;
  b.kind = header.value("kind", "");
  b.meta = header.value("meta", nlohmann::json::object());
  for (const auto& role : header["matrices"])
    b.matrices.emplace_back(role.get<std::string>(), decode_qmat(in));
  for (const auto& role : header["tensors"])
    b.tensors.emplace_back(role.get<std::string>(), decode_qten(in));
  return b;
}

namespace {

const QMatrix& find_matrix(const FactorBundle& b, const std::string& role) {
  for (const auto& [r, m] : b.matrices)
    if (r == role) return m;
  throw ParseError("bundle is missing matrix '" + role + "'");
}

const QTensor& find_tensor(const FactorBundle& b, const std::string& role) {
  for (const auto& [r, t] : b.tensors)
    if (r == role) return t;
  throw ParseError("bundle is missing tensor '" + role + "'");
}

void require_kind(const FactorBundle& b, const std::string& kind) {
  if (b.kind != kind)
    throw ParseError("bundle kind is '" + b.kind + "', want '" + kind + "'");
}

nlohmann::json params_json(const SketchParams& p) {
  return {{"l", p.l}, {"p", p.p}, {"seed", p.seed}, {"shortcut", p.shortcut}};
}

SketchParams params_from_json(const nlohmann::json& j) {
  SketchParams p;
  p.l = j.at("l").get<std::size_t>();
  p.p = j.at("p").get<std::size_t>();
  p.seed = j.at("seed").get<std::uint64_t>();
  p.shortcut = j.at("shortcut").get<bool>();
  return p;
}

nlohmann::json transform_json(const TransformSpec& spec) {
  nlohmann::json j;
  switch (spec.tag()) {
    case TransformSpec::Tag::Identity: j["tag"] = "identity"; break;
    case TransformSpec::Tag::Dct: j["tag"] = "dct"; break;
    case TransformSpec::Tag::Custom: {
      j["tag"] = "custom";
      auto mats = nlohmann::json::array();
      for (std::size_t m = 0; m < spec.mode_count(); ++m) {
        const Eigen::MatrixXd& q = spec.forward(m);
        auto rows = nlohmann::json::array();
        for (Eigen::Index i = 0; i < q.rows(); ++i) {
          auto row = nlohmann::json::array();
          for (Eigen::Index c = 0; c < q.cols(); ++c) row.push_back(q(i, c));
          rows.push_back(std::move(row));
        }
        mats.push_back(std::move(rows));
      }
      j["mats"] = std::move(mats);
      break;
    }
  }
  return j;
}

TransformSpec transform_from_json(const nlohmann::json& j,
                                  const std::vector<std::size_t>& dims) {
  const std::string tag = j.at("tag").get<std::string>();
  if (tag == "identity") return TransformSpec::identity(dims);
  if (tag == "dct") return TransformSpec::dct(dims);
  if (tag != "custom") throw ParseError("bundle: unknown transform tag '" + tag + "'");
  std::vector<Eigen::MatrixXd> mats;
  for (const auto& rows : j.at("mats")) {
    const std::size_t n = rows.size();
    Eigen::MatrixXd q(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t c = 0; c < n; ++c) q(i, c) = rows[i][c].get<double>();
    mats.push_back(std::move(q));
  }
  return TransformSpec::custom(dims, mats);
}

}  // namespace

FactorBundle to_bundle(const QRFactors& f) {
  FactorBundle b;
  b.kind = "qr";
  b.matrices = {{"Q", f.Q}, {"R", f.R}};
  b.meta["pivoted"] = f.pivoted;
  b.meta["perm"] = f.perm;
  return b;
}

QRFactors qr_from_bundle(const FactorBundle& b) {
  require_kind(b, "qr");
  QRFactors f;
  f.Q = find_matrix(b, "Q");
  f.R = find_matrix(b, "R");
  f.pivoted = b.meta.at("pivoted").get<bool>();
  f.perm = b.meta.at("perm").get<std::vector<int>>();
  return f;
}

FactorBundle to_bundle(const UTVFactors& f) {
  FactorBundle b;
  b.kind = f.kind == UTVKind::URV ? "urv" : "ulv";
  b.matrices = {{"U", f.U}, {"T", f.T}, {"V", f.V}};
  return b;
}

UTVFactors utv_from_bundle(const FactorBundle& b) {
  if (b.kind != "urv" && b.kind != "ulv")
    throw ParseError("bundle kind is '" + b.kind + "', want 'urv' or 'ulv'");
  UTVFactors f;
  f.kind = b.kind == "urv" ? UTVKind::URV : UTVKind::ULV;
  f.U = find_matrix(b, "U");
  f.T = find_matrix(b, "T");
  f.V = find_matrix(b, "V");
  return f;
}

FactorBundle to_bundle(const SVDFactors& f) {
  FactorBundle b;
  b.kind = "svd";
  b.matrices = {{"U", f.U}, {"V", f.V}};
  b.meta["sigma"] = f.sigma;
  return b;
}

SVDFactors svd_from_bundle(const FactorBundle& b) {
  require_kind(b, "svd");
  SVDFactors f;
  f.U = find_matrix(b, "U");
  f.V = find_matrix(b, "V");
  f.sigma = b.meta.at("sigma").get<std::vector<double>>();
  return f;
}

FactorBundle to_bundle(const CoRFactors& f) {
  FactorBundle b;
  b.kind = "cor";
  b.matrices = {{"U", f.U}, {"R", f.R}, {"V", f.V}};
  b.meta["params"] = params_json(f.params);
  return b;
}

CoRFactors cor_from_bundle(const FactorBundle& b) {
  require_kind(b, "cor");
  CoRFactors f;
  f.U = find_matrix(b, "U");
  f.R = find_matrix(b, "R");
  f.V = find_matrix(b, "V");
  f.params = params_from_json(b.meta.at("params"));
  return f;
}

FactorBundle to_bundle(const TensorUTVFactors& f) {
  FactorBundle b;
  b.kind = f.kind == TensorFactorKind::URV ? "turv" : "tsvd";
  b.tensors = {{"U", f.U}, {"T", f.T}, {"V", f.V}};
  b.meta["transform"] = transform_json(f.spec);
  return b;
}

TensorUTVFactors tutv_from_bundle(const FactorBundle& b) {
  if (b.kind != "turv" && b.kind != "tsvd")
    throw ParseError("bundle kind is '" + b.kind + "', want 'turv' or 'tsvd'");
  TensorUTVFactors f;
  f.kind = b.kind == "turv" ? TensorFactorKind::URV : TensorFactorKind::SVD;
  f.U = find_tensor(b, "U");
  f.T = find_tensor(b, "T");
  f.V = find_tensor(b, "V");
  f.spec = transform_from_json(b.meta.at("transform"), f.U.dims());
  return f;
}

FactorBundle to_bundle(const TensorCoRFactors& f) {
  FactorBundle b;
  b.kind = "tcor";
  b.tensors = {{"U", f.U}, {"R", f.R}, {"V", f.V}};
  b.meta["params"] = params_json(f.params);
  b.meta["transform"] = transform_json(f.spec);
  return b;
}

TensorCoRFactors tcor_from_bundle(const FactorBundle& b) {
  require_kind(b, "tcor");
  TensorCoRFactors f;
  f.U = find_tensor(b, "U");
  f.R = find_tensor(b, "R");
  f.V = find_tensor(b, "V");
  f.params = params_from_json(b.meta.at("params"));
  f.spec = transform_from_json(b.meta.at("transform"), f.U.dims());
  return f;
}

}  // namespace qutv
