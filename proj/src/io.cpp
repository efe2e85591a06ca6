#include "subrad/io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <stdexcept>

namespace subrad {

namespace {

constexpr double kExportFloor = 1e-300;

void append_level(std::string& out, LevelIndex lv) {
  out += std::to_string(lv.j);
  out += ',';
  out += std::to_string(lv.m);
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 32> buf;
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return {buf.data(), end};
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("short write to " + path.string());
}

std::string distribution_csv(const Distribution& dist) {
  std::string out = "J,M,P\n";
  for (Eigen::Index i = 0; i < dist.weights.size(); ++i) {
    const double p = dist.weights[i];
    if (!(p > kExportFloor)) continue;
    append_level(out, level_of(dist.params, static_cast<int>(i)));
    out += ',';
    out += format_double(p);
    out += '\n';
  }
  return out;
}

std::string currents_csv(const std::vector<CurrentEdge>& edges) {
  std::string out = "J_from,M_from,J_to,M_to,W\n";
  for (const CurrentEdge& e : edges) {
    append_level(out, e.from);
    out += ',';
    append_level(out, e.to);
    out += ',';
    out += format_double(e.net);
    out += '\n';
  }
  return out;
}

std::string g2_csv(const std::vector<double>& taus,
                   const std::vector<double>& values) {
  if (taus.size() != values.size())
    throw std::invalid_argument("g2_csv: size mismatch");
  std::string out = "tau,g2\n";
  for (std::size_t i = 0; i < taus.size(); ++i) {
    out += format_double(taus[i]);
    out += ',';
    out += format_double(values[i]);
    out += '\n';
  }
  return out;
}

std::string events_csv(const JumpRecord& record) {
  std::string out = "t,channel,J_from,M_from,J_to,M_to\n";
  for (const JumpEvent& ev : record.events) {
    out += format_double(ev.t);
    out += ',';
    out += channel_name(ev.channel);
    out += ',';
    append_level(out, ev.from);
    out += ',';
    append_level(out, channel_target(ev.from, ev.channel));
    out += '\n';
  }
  return out;
}

std::string generator_csv(const Generator& g) {
  std::string out = "J_from,M_from,J_to,M_to,rate\n";
  for (int col = 0; col < g.matrix.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(g.matrix, col); it;
         ++it) {
      if (it.row() == col) continue;
      append_level(out, g.label(col));
      out += ',';
      append_level(out, g.label(static_cast<int>(it.row())));
      out += ',';
      out += format_double(it.value());
      out += '\n';
    }
  }
  return out;
}

nlohmann::ordered_json params_json(const ModelParams& p) {
  return {{"N", p.n_atoms}, {"w", p.w}, {"gamma", p.gamma}};
}

nlohmann::ordered_json observables_json(const ObservableSet& obs) {
  return {{"intensity", obs.intensity},
          {"inversion", obs.inversion},
          {"mean_j", obs.mean_j},
          {"mean_m", obs.mean_m},
          {"boundary_mass", obs.boundary_mass}};
}

nlohmann::ordered_json entropy_json(const EntropyReport& report,
                                    const ModelParams& p) {
  nlohmann::ordered_json out = params_json(p);
  out["s_tot"] = report.s_tot;
  out["s_e"] = report.s_e;
  out["s_i"] = report.s_i;
  out["s_i_per_atom"] = report.s_i_per_atom;
  out["n_edges_skipped"] = report.n_edges_skipped;
  return out;
}

}  // namespace subrad
