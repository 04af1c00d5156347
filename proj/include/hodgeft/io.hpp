#pragma once

#include <string>

#include "hodgeft/algebra.hpp"

#include <nlohmann/json_fwd.hpp>

namespace hft {

// Algebra spec files: {"dim", "parities", "unit", "mul" (sparse records
// {i, j, out}), "integral", "Q", "Gminus" (row-major), "h0", "h4_blocks"}.
// Rationals are decimal strings "p/q" or "p". Missing mul pairs default to
// zero; a missing (j,i) is filled from (i,j) by the Koszul sign.
Algebra algebra_from_json(const nlohmann::json& j);
nlohmann::json algebra_to_json(const Algebra& a);

Algebra load_algebra_file(const std::string& path);
void save_algebra_file(const Algebra& a, const std::string& path);

nlohmann::json parse_json_file(const std::string& path);
void write_json_file(const nlohmann::json& j, const std::string& path);

}  // namespace hft
