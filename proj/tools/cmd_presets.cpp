#include <cstdio>

#include <json.hpp>

#include "stormfield/io/config_json.hpp"

#include "common.hpp"

namespace stormfield::cli {

int run_presets(bool as_json) {
    const auto table = field::preset_table();
    if (as_json) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& row : table) {
            out.push_back({{"weather", field::weather_name(row.weather)},
                           {"severity", field::severity_name(row.severity)},
                           {"config", io::config_to_json(row.config)}});
        }
        std::printf("%s\n", out.dump(2).c_str());
        return kExitOk;
    }

    std::printf("%-6s %-9s %8s  %-26s %-22s %-18s %s\n", "type", "severity", "quantity",
                "scale mean (m)", "velocity (m/s)", "opacity", "color mean");
    for (const auto& row : table) {
        const auto& c = row.config;
        std::printf("%-6s %-9s %8llu  (%.4g, %.4g, %.4g)%*s (%.3g, %.3g, %.3g)%*s %.3g +/- %.3g    (%.2f, %.2f, %.2f)\n",
                    field::weather_name(row.weather), field::severity_name(row.severity),
                    static_cast<unsigned long long>(c.quantity), c.dists.scale[0].mean,
                    c.dists.scale[1].mean, c.dists.scale[2].mean, 0, "",
                    c.velocity.direction.x, c.velocity.direction.y, c.velocity.direction.z, 0, "",
                    c.dists.opacity.mean, c.dists.opacity.stddev, c.dists.color[0].mean,
                    c.dists.color[1].mean, c.dists.color[2].mean);
    }
    std::printf("\nbounds and recycle offsets are per type; `presets --json` prints full configs\n");
    return kExitOk;
}

}  // namespace stormfield::cli
