// config.hpp - model files and run settings for the command-line tool
//
// A model file is a JSON object; see docs/config.md for the schema. Unknown keys are errors.

#pragma once

#include "friedrichs/model.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace friedrichs {

inline constexpr std::uint64_t kDefaultSeed = 20240917;

struct RunConfig {
    std::string source;        // file path or "hydrogen(N)"
    std::string canonical;     // normalized text the config hash is computed from
    ModelSpec model;
    std::optional<InitialState> initial_state;
    double tolerance{1e-10};   // relative tolerance of off-cut self-energy quadrature
    std::string format{"csv"}; // csv | json
    std::uint64_t seed{kDefaultSeed};
    std::string output_dir;    // empty: standard output
    std::optional<std::size_t> hydrogen_levels;  // set for the built-in series
};

// Parses JSON text. Throws Error(Parse) naming the line or the offending field, and
// Error(Validation) when the model breaks a standing assumption.
RunConfig parse_config(const std::string& text, const std::string& origin = "<string>");

// `spec` is a file path or the built-in "hydrogen(N)".
RunConfig load_config(const std::string& spec);

// 64-bit FNV-1a.
std::uint64_t fnv1a(const std::string& text) noexcept;

}  // namespace friedrichs
