#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sid/field_solver.hpp"

namespace sid {

// Snapshot layout: "SIDFIELD", uint32 0x01020304 (byte-order tag), int32 d, int32 n,
// float64 L, float64 t, then v and vt as n^d float64 each, all in writer byte order.
void write_snapshot(const std::string& path, const FieldState& s);
FieldState read_snapshot(const std::string& path);

struct NormSample {
  double t;
  NormReport norms;
};

// CSV with header t,l2,hdot1,energy_pair.
void write_norm_log(const std::string& path, const std::vector<NormSample>& rows);
std::vector<NormSample> read_norm_log(const std::string& path);

// Shortest decimal form that round-trips.
std::string format_double(double x);

}  // namespace sid
