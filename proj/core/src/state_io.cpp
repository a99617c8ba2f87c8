#include "strichartz/state_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "strichartz/error.hpp"

namespace strichartz {

namespace {

constexpr char kMagic[8] = {'S', 'T', 'R', 'L', 'A', 'B', 'S', 'V'};

template <typename T>
void put(std::string& out, T value) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  out.append(bytes, sizeof(T));
}

template <typename T>
T take(std::istream& in) {
  T value;
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  require(static_cast<bool>(in), ErrorKind::Io, "state snapshot is truncated");
  return value;
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), ErrorKind::Io, "cannot open " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    require(static_cast<bool>(out), ErrorKind::Io, "write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

void write_state_binary(const std::filesystem::path& path, const StateVector& u) {
  const TensorGrid& g = u.grid();
  std::string out(kMagic, sizeof(kMagic));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.particle_count()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.dimension()));
  for (const auto& a : g.axes()) put<std::uint64_t>(out, static_cast<std::uint64_t>(a.points));
  for (const auto& a : g.axes()) put<double>(out, a.extent);
  for (std::int64_t i = 0; i < u.size(); ++i) {
    put<double>(out, u.values()(i).real());
    put<double>(out, u.values()(i).imag());
  }
  write_file_atomic(path, out);
}

StateVector read_state_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorKind::Io, "cannot open " + path.string());
  char magic[8];
  in.read(magic, 8);
  require(in && std::memcmp(magic, kMagic, 8) == 0, ErrorKind::Io,
          path.string() + " is not a state snapshot");
  const auto n = take<std::uint32_t>(in);
  const auto d = take<std::uint32_t>(in);
  require(n >= 1 && d >= 1 && n * d <= 64, ErrorKind::Io, "implausible snapshot header");
  std::vector<int> points(n * d);
  std::vector<double> extents(n * d);
  for (auto& p : points) p = static_cast<int>(take<std::uint64_t>(in));
  for (auto& e : extents) e = take<double>(in);
  auto grid = std::make_shared<const TensorGrid>(static_cast<int>(n), static_cast<int>(d), extents,
                                                 points);
  StateVector u(grid);
  for (std::int64_t i = 0; i < u.size(); ++i) {
    const double re = take<double>(in);
    const double im = take<double>(in);
    u.values()(i) = cplx(re, im);
  }
  return u;
}

std::string state_csv(const StateVector& u) {
  const TensorGrid& g = u.grid();
  require(g.axis_count() <= 2, ErrorKind::UnsupportedDimension,
          "CSV export supports 1-d and 2-d grids only");
  std::ostringstream os;
  os << std::setprecision(17);
  os << (g.axis_count() == 1 ? "x" : "x0,x1") << ",re,im,abs2\n";
  for (std::int64_t flat = 0; flat < g.size(); ++flat) {
    const Eigen::VectorXd x = g.point(flat);
    for (int a = 0; a < x.size(); ++a) os << x(a) << ',';
    const cplx v = u.values()(flat);
    os << v.real() << ',' << v.imag() << ',' << std::norm(v) << '\n';
  }
  return os.str();
}

void write_state_csv(const std::filesystem::path& path, const StateVector& u) {
  write_file_atomic(path, state_csv(u));
}

}  // namespace strichartz
