#include "mmblock/config.hpp"

#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace mmblock {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

struct FieldInfo {
    double SystemParams::* member;
    double to_internal;  // multiply CLI value by this
};

// CLI units: per-km^2 for BS and static densities, degrees for the
// self-blockage angle, SI elsewhere.
const std::map<std::string, FieldInfo>& field_table() {
    static const std::map<std::string, FieldInfo> table = {
        {"los_range_R", {&SystemParams::los_range_R, 1.0}},
        {"bs_density_lambda_T", {&SystemParams::bs_density_lambda_T, 1e-6}},
        {"blocker_density_lambda_B",
         {&SystemParams::blocker_density_lambda_B, 1.0}},
        {"static_density_lambda_S",
         {&SystemParams::static_density_lambda_S, 1e-6}},
        {"blocker_speed_V", {&SystemParams::blocker_speed_V, 1.0}},
        {"height_blocker_hB", {&SystemParams::height_blocker_hB, 1.0}},
        {"height_ue_hR", {&SystemParams::height_ue_hR, 1.0}},
        {"height_bs_hT", {&SystemParams::height_bs_hT, 1.0}},
        {"inv_mu", {&SystemParams::inv_mu, 1.0}},
        {"self_block_angle_omega",
         {&SystemParams::self_block_angle_omega, std::numbers::pi / 180.0}},
        {"mean_block_length_l", {&SystemParams::mean_block_length_l, 1.0}},
        {"mean_block_width_w", {&SystemParams::mean_block_width_w, 1.0}},
        {"nlos_kappa", {&SystemParams::nlos_kappa, 1.0}},
        {"nlos_attenuation_gamma_dB",
         {&SystemParams::nlos_attenuation_gamma_dB, 1.0}},
        {"path_loss_exponent_PLE",
         {&SystemParams::path_loss_exponent_PLE, 1.0}},
    };
    return table;
}

const FieldInfo& field(const std::string& key) {
    const auto it = field_table().find(key);
    if (it == field_table().end())
        throw std::invalid_argument("unknown parameter key: " + key);
    return it->second;
}

}  // namespace

ConfigMap parse_config_text(const std::string& text) {
    ConfigMap out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key=value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": empty key or value");
        out[key] = value;
    }
    return out;
}

ConfigMap load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

SystemParams params_from_config(ConfigMap& config) {
    SystemParams p;
    for (auto it = config.begin(); it != config.end();) {
        if (is_param_key(it->first)) {
            set_param_cli(p, it->first, std::stod(it->second));
            it = config.erase(it);
        } else {
            ++it;
        }
    }
    return p;
}

double cli_to_internal(const std::string& key, double cli_value) {
    return cli_value * field(key).to_internal;
}

double internal_to_cli(const std::string& key, double internal_value) {
    return internal_value / field(key).to_internal;
}

void set_param_cli(SystemParams& p, const std::string& key, double cli_value) {
    const FieldInfo& f = field(key);
    p.*(f.member) = cli_value * f.to_internal;
}

double get_param_cli(const SystemParams& p, const std::string& key) {
    const FieldInfo& f = field(key);
    return p.*(f.member) / f.to_internal;
}

bool is_param_key(const std::string& key) {
    return field_table().count(key) > 0;
}

}  // namespace mmblock
