#include "catlab/io.hpp"

#include "catlab/errors.hpp"

#include <json.hpp>

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace catlab::io {

using nlohmann::json;

namespace {

std::string slurp(const std::string& path, const std::string& what) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + what + ": " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError("invalid " + what + " JSON: " + e.what());
  }
}

}  // namespace

symplectic::SymplecticMatrix read_matrix(const std::string& path) { return parse_matrix(slurp(path, "matrix")); }

symplectic::SymplecticMatrix parse_matrix(const std::string& text) {
  const json j = parse(text, "matrix");
  try {
    const int d = j.at("d").get<int>();
    for (const auto& row : j.at("rows"))
      for (const auto& x : row)
        if (!x.is_number_integer()) throw InputError("matrix: entries must be integers");
    auto rows = j.at("rows").get<std::vector<std::vector<std::int64_t>>>();
    if (d < 1 || rows.size() != static_cast<std::size_t>(2 * d))
      throw InputError("matrix: \"rows\" must hold 2d rows");
    return symplectic::SymplecticMatrix(rows);
  } catch (const json::exception& e) {
    throw InputError(std::string("invalid matrix JSON: ") + e.what());
  }
}

std::string matrix_json(const symplectic::SymplecticMatrix& a) {
  json j;
  j["d"] = a.d();
  j["rows"] = a.entries().rows();
  return j.dump();
}

quant::Observable read_observable(const std::string& path, bool symmetrize) {
  return parse_observable(slurp(path, "observable"), symmetrize, std::filesystem::path(path).stem().string());
}

quant::Observable parse_observable(const std::string& text, bool symmetrize, const std::string& id) {
  const json j = parse(text, "observable");
  quant::Observable::Terms terms;
  int d = 0;
  try {
    d = j.at("d").get<int>();
    for (const auto& t : j.at("terms")) {
      auto u = t.at("u").get<std::vector<std::int64_t>>();
      if (u.size() != static_cast<std::size_t>(2 * d)) throw InputError("observable: each u must have length 2d");
      const linalg::cplx c(t.value("re", 0.0), t.value("im", 0.0));
      terms[u] += c;
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("invalid observable JSON: ") + e.what());
  }
  return symmetrize ? quant::Observable::symmetrized(d, std::move(terms), id)
                    : quant::Observable(d, std::move(terms), id);
}

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
      if (used != item.size()) throw InputError("");
    } catch (const std::exception&) {
      throw InputError("invalid integer list: " + text);
    }
  }
  if (out.empty()) throw InputError("invalid integer list: " + text);
  return out;
}

std::string join(const std::vector<std::int64_t>& v, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + std::to_string(v[i]);
  return out;
}

}  // namespace catlab::io
