#pragma once

// JSON inputs and CSV number formatting.

#include "catlab/quantization.hpp"
#include "catlab/symplectic.hpp"

#include <string>

namespace catlab::io {

/// {"d": <int>, "rows": [[...], ...]}. Throws InputError("cannot read matrix: ...")
/// for unreadable files and InputError for malformed content.
symplectic::SymplecticMatrix read_matrix(const std::string& path);
symplectic::SymplecticMatrix parse_matrix(const std::string& text);
std::string matrix_json(const symplectic::SymplecticMatrix& a);

/// {"d": <int>, "terms": [{"u": [...], "re": <float>, "im": <float>}, ...]}.
/// The observable id is the file stem.
quant::Observable read_observable(const std::string& path, bool symmetrize = false);
quant::Observable parse_observable(const std::string& text, bool symmetrize = false, const std::string& id = "");

/// 12 significant digits, shortest form.
std::string format_double(double x);

/// "1,-2,3" -> {1, -2, 3}
std::vector<std::int64_t> parse_int_list(const std::string& text);
std::string join(const std::vector<std::int64_t>& v, const std::string& sep);

}  // namespace catlab::io
