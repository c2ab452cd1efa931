#pragma once

#include <map>
#include <string>

#include "mmblock/params.hpp"

namespace mmblock {

/// Flat key=value config in CLI units: densities of BSs and static
/// blockages per km^2, blocker density per m^2, angles in degrees.
/// '#' starts a comment. Keys are named exactly as SystemParams fields.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config_text(const std::string& text);
ConfigMap load_config_file(const std::string& path);

/// Applies config keys (CLI units) on top of defaults. Unknown keys not
/// in `extra_ok` raise std::invalid_argument. Keys consumed from the
/// map are erased; leftovers are the caller's (sweep specs etc.).
SystemParams params_from_config(ConfigMap& config);

/// CLI-unit accessors: conversion lives here and only here.
double cli_to_internal(const std::string& key, double cli_value);
double internal_to_cli(const std::string& key, double internal_value);

/// Reads/writes one SystemParams field by name, in CLI units.
void set_param_cli(SystemParams& p, const std::string& key, double cli_value);
double get_param_cli(const SystemParams& p, const std::string& key);

bool is_param_key(const std::string& key);

}  // namespace mmblock
