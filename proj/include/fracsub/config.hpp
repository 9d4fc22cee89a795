#pragma once

#include <string>
#include <string_view>

#include "fracsub/studies.hpp"

namespace fracsub {

/// Study configuration from TOML or JSON text. Both formats share one schema:
///
///   kind = "fode" | "pde" | "space"      scheme = "glbe" | "fbdf22" | "cbe" | "usbd"
///   alpha, T, lambda                     exponents = [nu or mu, ...]
///   dimension, mass = "lumped" | "galerkin", meshes = [M, ...], steps = [N, ...]
///   case = "a" | "b", comparison = "restrict" | "interpolate", output = "path.csv"
///
/// Optional explicit data replaces the example builders:
///
///   [source]   projection = "l2" | "interpolation"
///   [[source.term]]  c = 1.0, mu = -0.5, profile = "pow:-0.25"
///   [initial]  profile = "indicator:0.25,0.75", projection = "l2"
///
/// Unknown keys are rejected. The result is validated.
/// @throws ConfigError on syntax or schema errors, DomainError on invalid values
RunConfig parse_config_toml(std::string_view text);
RunConfig parse_config_json(std::string_view text);

/// Dispatch on the file extension (.json, anything else is read as TOML).
/// @throws ConfigError if the file cannot be read
RunConfig load_run_config(const std::string& path);

}  // namespace fracsub
