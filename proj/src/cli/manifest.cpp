#include "sid/cli/manifest.hpp"

#include <fftw3.h>
#include <openssl/evp.h>
#include <openssl/opensslv.h>

#include <array>
#include <boost/version.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>

#include "sid/error.hpp"

#ifndef SIDLAB_VERSION
#define SIDLAB_VERSION "dev"
#endif

namespace sid::cli {

std::string sha256_hex(const std::string& text) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(text.data(), text.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw Error(ErrorKind::numerical, "SHA-256 digest failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

void write_manifest(const RunRecord& r) {
  using nlohmann::ordered_json;
  const std::string ini = to_ini(r.config);
  ordered_json j;
  j["experiment"] = to_string(r.config.experiment);
  j["config_sha256"] = sha256_hex(ini);
  j["config"] = ini;
  j["seed"] = r.config.seed;
  j["workers"] = r.workers;
  ordered_json v;
  v["sidlab"] = SIDLAB_VERSION;
  v["fftw"] = std::string(fftw_version);
  v["boost"] = BOOST_LIB_VERSION;
  v["openssl"] = OPENSSL_VERSION_TEXT;
  v["compiler"] = __VERSION__;
  j["versions"] = v;
  j["wall_time_s"] = r.wall_time_s;
  j["exit_status"] = r.exit_status;
  j["outputs"] = r.outputs;
  ordered_json m = ordered_json::object();
  for (const Metric& x : r.metrics) {
    if (std::isfinite(x.value)) m[x.name] = x.value;
    else m[x.name] = nullptr;
  }
  j["metrics"] = m;
  const std::filesystem::path path = std::filesystem::path(r.config.output_dir) / "manifest.json";
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::invalid_config, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace sid::cli
