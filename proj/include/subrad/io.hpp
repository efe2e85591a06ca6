#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "subrad/distribution.hpp"
#include "subrad/evolve.hpp"
#include "subrad/kmc.hpp"
#include "subrad/noneq.hpp"
#include "subrad/rates.hpp"

namespace subrad {

inline constexpr int kFormatVersion = 1;

// Shortest decimal digits that round-trip exactly; keeps every data file
// byte-identical across runs with the same configuration.
std::string format_double(double v);

void write_file(const std::filesystem::path& path, std::string_view content);

// CSV payloads. All headers and row orders are fixed; consumers may diff
// files directly.
std::string distribution_csv(const Distribution& dist);  // J,M,P
std::string currents_csv(const std::vector<CurrentEdge>& edges);
std::string g2_csv(const std::vector<double>& taus,
                   const std::vector<double>& values);
std::string events_csv(const JumpRecord& record);
std::string generator_csv(const Generator& g);  // off-diagonal rate triplets

nlohmann::ordered_json params_json(const ModelParams& p);
nlohmann::ordered_json observables_json(const ObservableSet& obs);
nlohmann::ordered_json entropy_json(const EntropyReport& report,
                                    const ModelParams& p);

}  // namespace subrad
