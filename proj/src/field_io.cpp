#include "sid/field_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "sid/error.hpp"

namespace sid {

namespace {

constexpr char kMagic[8] = {'S', 'I', 'D', 'F', 'I', 'E', 'L', 'D'};
constexpr std::uint32_t kByteOrderTag = 0x01020304u;

template <class T>
T swapped(T x) {
  unsigned char b[sizeof(T)];
  std::memcpy(b, &x, sizeof(T));
  std::reverse(b, b + sizeof(T));
  std::memcpy(&x, b, sizeof(T));
  return x;
}

template <class T>
void put(std::ofstream& os, T x) {
  os.write(reinterpret_cast<const char*>(&x), sizeof(T));
}

template <class T>
T get(std::ifstream& is, bool swap) {
  T x{};
  is.read(reinterpret_cast<char*>(&x), sizeof(T));
  if (!is) throw Error(ErrorKind::invalid_config, "truncated snapshot file");
  return swap ? swapped(x) : x;
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  for (int p = 15; p <= 17; ++p) {
    std::snprintf(buf, sizeof buf, "%.*g", p, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

void write_snapshot(const std::string& path, const FieldState& s) {
  s.check();
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::invalid_config, "cannot open '" + path + "' for writing");
  os.write(kMagic, sizeof kMagic);
  put<std::uint32_t>(os, kByteOrderTag);
  put<std::int32_t>(os, s.grid.d);
  put<std::int32_t>(os, s.grid.n);
  put<double>(os, s.grid.half_width);
  put<double>(os, s.t);
  os.write(reinterpret_cast<const char*>(s.v.data()), static_cast<std::streamsize>(s.v.size() * sizeof(double)));
  os.write(reinterpret_cast<const char*>(s.vt.data()), static_cast<std::streamsize>(s.vt.size() * sizeof(double)));
  if (!os) throw Error(ErrorKind::invalid_config, "failed writing '" + path + "'");
}

FieldState read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorKind::invalid_config, "cannot open '" + path + "'");
  char magic[8];
  is.read(magic, sizeof magic);
  if (!is || std::memcmp(magic, kMagic, sizeof magic) != 0)
    throw Error(ErrorKind::invalid_config, "'" + path + "' is not a field snapshot");
  std::uint32_t tag = get<std::uint32_t>(is, false);
  bool swap = false;
  if (tag != kByteOrderTag) {
    if (swapped(tag) != kByteOrderTag) throw Error(ErrorKind::invalid_config, "bad byte-order tag in snapshot");
    swap = true;
  }
  FieldState s;
  s.grid.d = get<std::int32_t>(is, swap);
  s.grid.n = get<std::int32_t>(is, swap);
  s.grid.half_width = get<double>(is, swap);
  s.t = get<double>(is, swap);
  s.grid.validate();
  s.v.resize(s.grid.size());
  s.vt.resize(s.grid.size());
  for (auto* arr : {&s.v, &s.vt}) {
    is.read(reinterpret_cast<char*>(arr->data()), static_cast<std::streamsize>(arr->size() * sizeof(double)));
    if (!is) throw Error(ErrorKind::invalid_config, "truncated snapshot file");
    if (swap)
      for (double& x : *arr) x = swapped(x);
  }
  return s;
}

void write_norm_log(const std::string& path, const std::vector<NormSample>& rows) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::invalid_config, "cannot open '" + path + "' for writing");
  os << "t,l2,hdot1,energy_pair\n";
  for (const NormSample& r : rows)
    os << format_double(r.t) << ',' << format_double(r.norms.l2) << ',' << format_double(r.norms.hdot1) << ','
       << format_double(r.norms.energy_pair) << '\n';
}

std::vector<NormSample> read_norm_log(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::invalid_config, "cannot open '" + path + "'");
  std::string line;
  std::getline(is, line);
  if (line != "t,l2,hdot1,energy_pair") throw Error(ErrorKind::invalid_config, "unexpected norm log header");
  std::vector<NormSample> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    double v[4];
    for (double& x : v) {
      if (!std::getline(ls, cell, ',')) throw Error(ErrorKind::invalid_config, "short norm log row");
      x = std::stod(cell);
    }
    NormSample r{v[0], {}};
    r.norms.l2 = v[1];
    r.norms.hdot1 = v[2];
    r.norms.energy_pair = v[3];
    r.norms.h1 = std::hypot(v[1], v[2]);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace sid
