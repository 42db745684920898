#include "rgamss/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "rgamss/baselines.hpp"
#include "rgamss/errors.hpp"
#include "rgamss/gof.hpp"
#include "rgamss/rng.hpp"
#include "rgamss/sampler.hpp"
#include "rgamss/text.hpp"

namespace rgamss::cli {
namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<ShapeParam> shapes_of(const RunConfig& cfg) {
  if (cfg.alpha.empty()) throw UsageError("--alpha is required");
  std::vector<ShapeParam> shapes;
  for (double a : cfg.alpha) shapes.emplace_back(a);
  if (cfg.workers == 0) throw UsageError("--workers must be >= 1");
  return shapes;
}

// Writes to cfg.out when set, otherwise to `out`.
bool emit(const RunConfig& cfg, const std::string& text, std::ostream& out, std::ostream& err) {
  if (!cfg.out) {
    out << text;
    out.flush();
    return static_cast<bool>(out);
  }
  std::ofstream file(*cfg.out, std::ios::binary);
  file << text;
  file.close();
  if (!file) {
    err << "error: cannot write " << *cfg.out << '\n';
    return false;
  }
  return true;
}

// Runs `body` and maps argument errors to exit code 2.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  }
  return exit_code::kInvalidArgs;
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string row;
  for (const auto& cell : cells) {
    if (!row.empty()) row += ',';
    row += cell;
  }
  return row + '\n';
}

}  // namespace

int cmd_sample(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto shapes = shapes_of(cfg);
    if (shapes.size() != 1) throw UsageError("sample takes exactly one --alpha value");
    const LogGammaBatch batch =
        sample_log_gamma_parallel(shapes.front(), cfg.n, cfg.seed, cfg.workers);
    const bool natural = cfg.scale == Scale::Natural;

    std::string text;
    if (cfg.format == Format::Csv) {
      text.reserve(batch.log_y.size() * 24);
      text += natural ? "y\n" : "log_y\n";
      for (double v : batch.log_y) {
        text += format_double(natural ? to_natural(v) : v);
        text += '\n';
      }
    } else {
      json doc;
      doc["alpha"] = shapes.front().alpha();
      doc["n"] = cfg.n;
      doc["seed"] = cfg.seed;
      doc["scale"] = natural ? "natural" : "log";
      json values = json::array();
      for (double v : batch.log_y) values.push_back(natural ? to_natural(v) : v);
      doc["values"] = std::move(values);
      text = doc.dump() + '\n';
    }
    return emit(cfg, text, out, err) ? exit_code::kOk : exit_code::kIo;
  });
}

int cmd_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto shapes = shapes_of(cfg);
    if (cfg.n < gof::kMinReportSize) {
      throw UsageError("validate needs --n >= " + std::to_string(gof::kMinReportSize));
    }
    const std::vector<double> t_grid = gof::make_grid(cfg.t_min, cfg.t_max, cfg.t_step);

    // Report k always uses stream k, whichever worker computes it.
    std::vector<gof::GofReport> reports(shapes.size());
    auto work = [&](unsigned worker) {
      for (std::size_t k = worker; k < shapes.size(); k += cfg.workers) {
        UniformSource src(cfg.seed, k);
        reports[k] = gof::run_report(shapes[k], cfg.n, src, t_grid);
      }
    };
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < std::min<std::size_t>(cfg.workers, shapes.size()); ++w) {
        pool.emplace_back(work, w);
      }
    }

    std::string text;
    if (cfg.format == Format::Csv) {
      bool header = true;
      for (const auto& report : reports) {
        const json obj = json::parse(report.to_json());
        if (header) {
          std::string names;
          for (const auto& [key, _] : obj.items()) names += (names.empty() ? "" : ",") + key;
          text += names + '\n';
          header = false;
        }
        std::string row;
        for (const auto& [key, value] : obj.items()) {
          if (!row.empty()) row += ',';
          row += value.is_number_float() ? format_double(value.get<double>()) : value.dump();
        }
        text += row + '\n';
      }
    } else {
      json arr = json::array();
      for (const auto& report : reports) arr.push_back(json::parse(report.to_json()));
      text = arr.dump() + '\n';
    }
    if (!emit(cfg, text, out, err)) return exit_code::kIo;
    const bool all_pass = std::all_of(reports.begin(), reports.end(),
                                      [](const gof::GofReport& r) { return r.passes(); });
    return all_pass ? exit_code::kOk : exit_code::kValidationFailed;
  });
}

namespace {

struct BenchRow {
  std::string sampler;
  double alpha;
  std::uint64_t n;
  double draws_per_sec;
  double proposals_per_accept;
  double underflow_frac;
};

// Keeps the draw loops from being optimized away.
volatile double bench_sink = 0.0;

template <typename Draw>
BenchRow bench_one(std::string name, ShapeParam shape, std::uint64_t n, Draw draw) {
  SamplerStats stats;
  std::uint64_t lost = 0;
  double sink = 0.0;
  const auto start = std::chrono::steady_clock::now();
  for (std::uint64_t i = 0; i < n; ++i) {
    const auto [value, is_lost] = draw(stats);
    lost += is_lost ? 1 : 0;
    sink += value;
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  bench_sink = sink;
  const double secs = std::max(elapsed.count(), 1e-9);
  return {std::move(name),
          shape.alpha(),
          n,
          static_cast<double>(n) / secs,
          stats.proposals_per_accept(),
          n == 0 ? 0.0 : static_cast<double>(lost) / static_cast<double>(n)};
}

}  // namespace

int cmd_bench(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto shapes = shapes_of(cfg);
    std::vector<BenchRow> rows;
    std::uint64_t stream = 0;
    for (const ShapeParam shape : shapes) {
      const EnvelopeParams params = envelope_params(shape);
      {
        UniformSource src(cfg.seed, stream++);
        rows.push_back(bench_one("rgamss", shape, cfg.n, [&](SamplerStats& st) {
          const double v = -sample_z(params, src, st) / params.alpha;
          return std::pair{v, !std::isfinite(v)};
        }));
      }
      {
        UniformSource src(cfg.seed, stream++);
        rows.push_back(bench_one(std::string(to_string(baselines::BaselineKind::AhrensDieterGS)),
                                 shape, cfg.n, [&](SamplerStats& st) {
                                   const double v = baselines::ahrens_dieter_gs(shape, src, &st);
                                   return std::pair{v, v == 0.0};
                                 }));
      }
      {
        UniformSource src(cfg.seed, stream++);
        rows.push_back(bench_one(std::string(to_string(baselines::BaselineKind::MarsagliaTsangLog)),
                                 shape, cfg.n, [&](SamplerStats& st) {
                                   const double v = baselines::marsaglia_tsang_log(shape, src, &st);
                                   return std::pair{v, !std::isfinite(v)};
                                 }));
      }
    }

    std::string text;
    if (cfg.format == Format::Csv) {
      text = "sampler,alpha,n,draws_per_sec,proposals_per_accept,underflow_frac\n";
      for (const auto& r : rows) {
        text += csv_row({r.sampler, format_double(r.alpha), std::to_string(r.n),
                         format_double(r.draws_per_sec), format_double(r.proposals_per_accept),
                         format_double(r.underflow_frac)});
      }
    } else {
      json arr = json::array();
      for (const auto& r : rows) {
        arr.push_back({{"sampler", r.sampler},
                       {"alpha", r.alpha},
                       {"n", r.n},
                       {"draws_per_sec", r.draws_per_sec},
                       {"proposals_per_accept", r.proposals_per_accept},
                       {"underflow_frac", r.underflow_frac}});
      }
      text = arr.dump() + '\n';
    }
    return emit(cfg, text, out, err) ? exit_code::kOk : exit_code::kIo;
  });
}

int cmd_curves(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto shapes = shapes_of(cfg);
    const ShapeParam shape = shapes.front();
    const EnvelopeParams params = envelope_params(shape);
    const double alpha = shape.alpha();

    const double z_lo = cfg.z_min.value_or(-6.0 * alpha * std::log(10.0));
    const double z_hi = cfg.z_max.value_or(8.0);
    if (!(z_hi > z_lo) || cfg.z_points < 2) throw UsageError("--z-grid needs min < max and >= 2 points");
    std::vector<double> z_grid(cfg.z_points);
    for (std::size_t k = 0; k < cfg.z_points; ++k) {
      z_grid[k] = z_lo + (z_hi - z_lo) * static_cast<double>(k) / static_cast<double>(cfg.z_points - 1);
    }
    z_grid.back() = z_hi;
    // The envelope jumps at z = 0; always emit that row.
    if (z_lo < 0.0 && z_hi > 0.0 && std::find(z_grid.begin(), z_grid.end(), 0.0) == z_grid.end()) {
      z_grid.insert(std::upper_bound(z_grid.begin(), z_grid.end(), 0.0), 0.0);
    }

    constexpr std::size_t kRatePoints = 200;
    const double alpha_max = *std::max_element(cfg.alpha.begin(), cfg.alpha.end());
    std::vector<double> a_grid(kRatePoints);
    for (std::size_t k = 0; k < kRatePoints; ++k) {
      a_grid[k] = alpha_max * static_cast<double>(k + 1) / static_cast<double>(kRatePoints);
    }

    std::string envelope = "z,h,eta\n";
    std::string rate = "alpha,r,approx\n";
    json doc;
    json zs = json::array(), hs = json::array(), etas = json::array();
    json as = json::array(), rs = json::array(), approxs = json::array();
    for (double z : z_grid) {
      const double h = std::exp(log_h(z, shape));
      const double eta = std::exp(log_eta(z, params));
      envelope += csv_row({format_double(z), format_double(h), format_double(eta)});
      zs.push_back(z);
      hs.push_back(h);
      etas.push_back(eta);
    }
    for (double a : a_grid) {
      const AcceptanceRate r = acceptance_rate(ShapeParam(a));
      rate += csv_row({format_double(a), format_double(r.exact), format_double(r.approx)});
      as.push_back(a);
      rs.push_back(r.exact);
      approxs.push_back(r.approx);
    }

    if (cfg.format == Format::Obj) {
      doc["envelope"] = {{"alpha", alpha}, {"z", zs}, {"h", hs}, {"eta", etas}};
      doc["rate"] = {{"alpha", as}, {"r", rs}, {"approx", approxs}};
      return emit(cfg, doc.dump() + '\n', out, err) ? exit_code::kOk : exit_code::kIo;
    }
    if (!cfg.out) {
      out << envelope << '\n' << rate;
      out.flush();
      return out ? exit_code::kOk : exit_code::kIo;
    }
    // --out foo.csv writes foo.csv (envelope) and foo_rate.csv.
    std::string rate_path = *cfg.out;
    const auto dot = rate_path.rfind(".csv");
    rate_path = dot != std::string::npos && dot + 4 == rate_path.size()
                    ? rate_path.substr(0, dot) + "_rate.csv"
                    : rate_path + "_rate.csv";
    RunConfig rate_cfg = cfg;
    rate_cfg.out = rate_path;
    const bool ok = emit(cfg, envelope, out, err) && emit(rate_cfg, rate, out, err);
    return ok ? exit_code::kOk : exit_code::kIo;
  });
}

namespace {

std::vector<double> parse_alpha_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v;
    if (!parse_double(item, v)) throw UsageError("--alpha: not a number: '" + item + "'");
    values.push_back(v);
  }
  if (values.empty()) throw UsageError("--alpha: empty list");
  return values;
}

std::array<double, 3> parse_triple(const std::string& text, const char* flag) {
  std::array<double, 3> out{};
  std::stringstream ss(text);
  std::string item;
  std::size_t k = 0;
  while (std::getline(ss, item, ':')) {
    if (k == 3 || !parse_double(item, out[k])) {
      throw UsageError(std::string(flag) + " expects min:max:step, got '" + text + "'");
    }
    ++k;
  }
  if (k != 3) throw UsageError(std::string(flag) + " expects three ':'-separated numbers");
  return out;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Small-shape gamma variates on the log scale"};
  app.require_subcommand(1);

  RunConfig cfg;
  cfg.seed = kDefaultSeed;
  std::string alpha_text;
  std::string scale_text = "log";
  std::string format_text = "csv";
  std::string out_path;
  std::string t_grid_text;
  std::string z_grid_text;

  struct Sub {
    Subcommand kind;
    const char* name;
    const char* help;
    const char* default_alpha;
    std::uint64_t default_n;
  };
  const std::array<Sub, 4> subs = {{
      {Subcommand::Sample, "sample", "Draw log Y (or Y) for Y ~ Gam(alpha, 1)", "", 10},
      {Subcommand::Validate, "validate", "Goodness-of-fit reports per alpha", "0.0001,0.01,0.1,0.5",
       100000},
      {Subcommand::Bench, "bench", "Throughput and efficiency of each sampler", "0.5,0.1,0.01,0.001",
       100000},
      {Subcommand::Curves, "curves", "Target/envelope curve and acceptance-rate data", "0.1", 0},
  }};
  std::vector<CLI::App*> commands;
  std::array<std::uint64_t, subs.size()> n_values{};
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const Sub& sub = subs[i];
    CLI::App* cmd = app.add_subcommand(sub.name, sub.help);
    auto* alpha_opt = cmd->add_option("--alpha", alpha_text, "Shape in (0,1), or a comma list");
    if (*sub.default_alpha == '\0') alpha_opt->required();
    cmd->add_option("--n", n_values[i], "Number of draws")->default_val(sub.default_n);
    cmd->add_option("--seed", cfg.seed,
                    "64-bit seed; block/report k draws from stream k of this seed")
        ->default_val(kDefaultSeed);
    cmd->add_option("--workers", cfg.workers, "Worker threads (output does not depend on it)")
        ->default_val(1u);
    cmd->add_option("--scale", scale_text, "log|natural (sample only)")
        ->check(CLI::IsMember({"log", "natural"}));
    cmd->add_option("--format", format_text, "csv|obj")->check(CLI::IsMember({"csv", "obj"}));
    cmd->add_option("--out", out_path, "Output file (default: standard output)");
    cmd->add_option("--t-grid", t_grid_text, "CF grid min:max:step (validate)");
    cmd->add_option("--z-grid", z_grid_text, "Curve grid min:max:points (curves)");
    commands.push_back(cmd);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_code::kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kInvalidArgs;
  }

  std::size_t which = 0;
  while (!commands[which]->parsed()) ++which;
  cfg.subcommand = subs[which].kind;
  cfg.n = n_values[which];

  try {
    cfg.alpha = parse_alpha_list(alpha_text.empty() ? subs[which].default_alpha : alpha_text);
    cfg.scale = scale_text == "natural" ? Scale::Natural : Scale::Log;
    cfg.format = format_text == "obj" ? Format::Obj : Format::Csv;
    if (!out_path.empty()) cfg.out = out_path;
    if (!t_grid_text.empty()) {
      const auto t = parse_triple(t_grid_text, "--t-grid");
      cfg.t_min = t[0];
      cfg.t_max = t[1];
      cfg.t_step = t[2];
    }
    if (!z_grid_text.empty()) {
      const auto z = parse_triple(z_grid_text, "--z-grid");
      if (!(z[2] >= 2.0) || z[2] != std::floor(z[2])) throw UsageError("--z-grid points must be an integer >= 2");
      cfg.z_min = z[0];
      cfg.z_max = z[1];
      cfg.z_points = static_cast<std::size_t>(z[2]);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code::kInvalidArgs;
  }

  switch (cfg.subcommand) {
    case Subcommand::Sample:
      return cmd_sample(cfg, out, err);
    case Subcommand::Validate:
      return cmd_validate(cfg, out, err);
    case Subcommand::Bench:
      return cmd_bench(cfg, out, err);
    case Subcommand::Curves:
      return cmd_curves(cfg, out, err);
  }
  return exit_code::kInvalidArgs;
}

}  // namespace rgamss::cli
