#include "pml/cli.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "pml/calibration.hpp"
#include "pml/emit.hpp"
#include "pml/errors.hpp"
#include "pml/json_io.hpp"
#include "pml/model.hpp"
#include "pml/population.hpp"
#include "pml/replicator.hpp"
#include "pml/scenario.hpp"

namespace pml {

namespace {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Per-command parameter schemas (strict: unknown keys are rejected by name).

enum class Kind { Num, Int, Str, StrList, Shocks, Bounds, Het };

struct Field {
  const char* key;
  Kind kind;
  bool required;
  json def;  // applied when the field is absent
};

const std::vector<Field>& baseline_fields() {
  static const std::vector<Field> f = {
      {"p0", Kind::Num, true, {}},      {"alpha_mit", Kind::Num, true, {}},
      {"k", Kind::Num, true, {}},       {"epsilon", Kind::Num, true, {}},
      {"loss", Kind::Num, true, {}},    {"theta", Kind::Num, true, {}},
      {"n_s", Kind::Num, true, {}},     {"n_a", Kind::Num, true, {}},
  };
  return f;
}

std::vector<Field> replicator_fields() {
  return {
      {"alpha_net", Kind::Num, true, {}}, {"gamma", Kind::Num, true, {}},
      {"p0", Kind::Num, true, {}},        {"alpha_mit", Kind::Num, true, {}},
      {"k", Kind::Num, true, {}},         {"epsilon", Kind::Num, true, {}},
      {"loss", Kind::Num, true, {}},
  };
}

const std::map<std::string, std::vector<Field>>& command_schemas() {
  static const std::map<std::string, std::vector<Field>> schemas = [] {
    std::map<std::string, std::vector<Field>> m;
    m["effort"] = baseline_fields();
    m["threshold"] = baseline_fields();

    auto equilibria = replicator_fields();
    equilibria.push_back({"grid_n", Kind::Int, false, 256});
    equilibria.push_back({"tol", Kind::Num, false, 1e-10});
    m["equilibria"] = equilibria;

    auto simulate = replicator_fields();
    simulate.push_back({"s0", Kind::Num, true, {}});
    simulate.push_back({"t_end", Kind::Num, false, 200.0});
    simulate.push_back({"dt", Kind::Num, false, 0.01});
    m["simulate"] = simulate;

    auto scenario = simulate;
    scenario.push_back({"shocks", Kind::Shocks, false, json::array()});
    m["scenario"] = scenario;

    auto sweep = replicator_fields();
    sweep.push_back({"parameter", Kind::Str, true, {}});
    sweep.push_back({"lo", Kind::Num, true, {}});
    sweep.push_back({"hi", Kind::Num, true, {}});
    sweep.push_back({"n", Kind::Int, true, {}});
    m["sweep"] = sweep;

    auto hysteresis = sweep;
    hysteresis.push_back({"relax_t", Kind::Num, true, {}});
    hysteresis.push_back({"s0", Kind::Num, true, {}});
    hysteresis.push_back({"dt", Kind::Num, false, 0.01});
    m["hysteresis"] = hysteresis;

    std::vector<Field> abm = {
        {"p0", Kind::Num, true, {}},
        {"alpha_mit", Kind::Num, true, {}},
        {"k", Kind::Num, true, {}},
        {"epsilon", Kind::Num, true, {}},
        {"loss", Kind::Num, true, {}},
        {"theta", Kind::Num, true, {}},
        {"n_s", Kind::Num, false, 0.5},
        {"n_a", Kind::Num, false, 0.5},
        {"n_agents", Kind::Int, true, {}},
        {"mu", Kind::Num, false, 0.05},
        {"rounds", Kind::Int, true, {}},
        {"initial_share_alt", Kind::Num, true, {}},
        {"heterogeneity", Kind::Het, false, json::object()},
    };
    m["abm"] = abm;

    auto calibrate = replicator_fields();
    calibrate.push_back({"series", Kind::Str, true, {}});
    calibrate.push_back({"free", Kind::StrList, false, json::array()});
    calibrate.push_back({"bounds", Kind::Bounds, false, json::object()});
    m["calibrate"] = calibrate;
    return m;
  }();
  return schemas;
}

const std::map<std::string, std::string>& default_formats() {
  static const std::map<std::string, std::string> f = {
      {"effort", "json"},    {"threshold", "json"},  {"equilibria", "csv"},
      {"simulate", "csv"},   {"scenario", "json"},   {"sweep", "csv"},
      {"hysteresis", "csv"}, {"abm", "csv"},         {"calibrate", "json"},
  };
  return f;
}

bool plot_supported(const std::string& command) {
  return command == "simulate" || command == "scenario" || command == "sweep" ||
         command == "abm" || command == "calibrate";
}

void check_kind(const std::string& key, Kind kind, const json& v) {
  const auto fail = [&key](const std::string& msg) {
    throw ValidationError(key, msg);
  };
  switch (kind) {
    case Kind::Num:
      if (!v.is_number()) fail("must be a number");
      break;
    case Kind::Int:
      if (!v.is_number_integer() && !v.is_number_unsigned())
        fail("must be an integer");
      break;
    case Kind::Str:
      if (!v.is_string()) fail("must be a string");
      break;
    case Kind::StrList:
      if (!v.is_array()) fail("must be an array of strings");
      for (const auto& e : v)
        if (!e.is_string()) fail("must be an array of strings");
      break;
    case Kind::Shocks:
      if (!v.is_array()) fail("must be an array of {time,field,value} objects");
      for (const auto& e : v) {
        if (!e.is_object()) fail("must be an array of {time,field,value} objects");
        for (const auto& [k, sub] : e.items()) {
          if (k == "time" || k == "value") {
            if (!sub.is_number()) throw ValidationError("shocks." + k, "must be a number");
          } else if (k == "field") {
            if (!sub.is_string()) throw ValidationError("shocks.field", "must be a string");
          } else {
            throw ValidationError("shocks." + k, "unknown key");
          }
        }
        for (const char* req : {"time", "field", "value"})
          if (!e.contains(req))
            throw ValidationError(std::string("shocks.") + req, "missing required key");
      }
      break;
    case Kind::Bounds:
      if (!v.is_object()) fail("must map parameter names to [lo,hi]");
      for (const auto& [k, sub] : v.items()) {
        if (!sub.is_array() || sub.size() != 2 || !sub[0].is_number() ||
            !sub[1].is_number())
          throw ValidationError("bounds." + k, "must be a [lo,hi] number pair");
      }
      break;
    case Kind::Het: {
      if (!v.is_object()) fail("must map parameter names to widths");
      static const std::vector<std::string> known = {"p0",      "alpha_mit", "k",
                                                     "epsilon", "loss",      "theta"};
      for (const auto& [k, sub] : v.items()) {
        if (std::find(known.begin(), known.end(), k) == known.end())
          throw ValidationError("heterogeneity." + k, "unknown field");
        if (!sub.is_number())
          throw ValidationError("heterogeneity." + k, "must be a number");
      }
      break;
    }
  }
}

// Applies defaults, rejects unknown keys, and type-checks the rest.
json validate_params(const std::string& command, json params) {
  const auto it = command_schemas().find(command);
  if (it == command_schemas().end())
    throw ValidationError("command", "unknown command '" + command + "'");
  const auto& schema = it->second;
  if (!params.is_object()) throw ValidationError("params", "must be an object");

  for (const auto& [key, value] : params.items()) {
    const auto field =
        std::find_if(schema.begin(), schema.end(),
                     [&key](const Field& f) { return key == f.key; });
    if (field == schema.end())
      throw ValidationError(key, "unknown field for command '" + command + "'");
    check_kind(key, field->kind, value);
  }
  for (const auto& field : schema) {
    if (params.contains(field.key)) continue;
    if (field.required)
      throw ValidationError(field.key, "missing required field");
    params[field.key] = field.def;
  }
  return params;
}

// ---------------------------------------------------------------------------
// Command dispatch.

BaselineParams baseline_from(const json& p) {
  BaselineParams bp = p.get<BaselineParams>();
  bp.validate();
  return bp;
}

ReplicatorParams replicator_from(const json& p) {
  ReplicatorParams rp;
  p.at("alpha_net").get_to(rp.alpha_net);
  p.at("gamma").get_to(rp.gamma);
  p.at("p0").get_to(rp.p0);
  p.at("alpha_mit").get_to(rp.alpha_mit);
  p.at("k").get_to(rp.k);
  p.at("epsilon").get_to(rp.epsilon);
  p.at("loss").get_to(rp.loss);
  rp.validate();
  return rp;
}

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

void run_command(const RunConfig& config, const json& params,
                 const std::string& format, std::ostream& out) {
  const std::string& cmd = config.command;
  std::string artifact;

  if (cmd == "effort") {
    const auto sol = optimal_effort(baseline_from(params));
    artifact = format == "json" ? dump_json(json(sol)) : effort_to_csv(sol);
  } else if (cmd == "threshold") {
    const auto res = critical_threshold(baseline_from(params));
    artifact = format == "json" ? dump_json(json(res)) : threshold_to_csv(res);
  } else if (cmd == "equilibria") {
    const auto set =
        find_equilibria(replicator_from(params), params.at("grid_n").get<int>(),
                        params.at("tol").get<double>());
    artifact = format == "json" ? dump_json(json(set)) : equilibria_to_csv(set);
  } else if (cmd == "simulate") {
    const auto tr = integrate(params.at("s0").get<double>(), replicator_from(params),
                              params.at("t_end").get<double>(),
                              params.at("dt").get<double>());
    if (!config.plot.empty()) emit_plot_series(tr, config.plot);
    artifact = format == "json" ? dump_json(json(tr)) : trajectory_to_csv(tr);
  } else if (cmd == "scenario") {
    ShockSchedule schedule;
    for (const auto& ev : params.at("shocks")) {
      schedule.events.push_back({ev.at("time").get<double>(),
                                 ev.at("field").get<std::string>(),
                                 ev.at("value").get<double>()});
    }
    const auto res = run_scenario(params.at("s0").get<double>(),
                                  replicator_from(params), schedule,
                                  params.at("t_end").get<double>(),
                                  params.at("dt").get<double>());
    if (!config.plot.empty()) emit_plot_series(res.trajectory, config.plot);
    artifact = format == "json" ? dump_json(json(res))
                                : trajectory_to_csv(res.trajectory);
  } else if (cmd == "sweep") {
    const auto diagram =
        sweep(replicator_from(params), params.at("parameter").get<std::string>(),
              params.at("lo").get<double>(), params.at("hi").get<double>(),
              params.at("n").get<int>());
    if (!config.plot.empty()) emit_plot_series(diagram, config.plot);
    artifact = format == "json" ? dump_json(json(diagram)) : sweep_to_csv(diagram);
  } else if (cmd == "hysteresis") {
    const auto scan = hysteresis_scan(
        replicator_from(params), params.at("parameter").get<std::string>(),
        params.at("lo").get<double>(), params.at("hi").get<double>(),
        params.at("n").get<int>(), params.at("relax_t").get<double>(),
        params.at("s0").get<double>(), params.at("dt").get<double>());
    artifact = format == "json" ? dump_json(json(scan)) : hysteresis_to_csv(scan);
  } else if (cmd == "abm") {
    PopulationConfig pc;
    pc.base = baseline_from(params);
    pc.n_agents = params.at("n_agents").get<std::int64_t>();
    pc.revision_rate = params.at("mu").get<double>();
    pc.rounds = params.at("rounds").get<std::int64_t>();
    pc.initial_share_alt = params.at("initial_share_alt").get<double>();
    pc.seed = config.seed.value_or(1);
    const auto& het = params.at("heterogeneity");
    if (het.contains("p0")) pc.heterogeneity.p0 = het.at("p0").get<double>();
    if (het.contains("alpha_mit"))
      pc.heterogeneity.alpha_mit = het.at("alpha_mit").get<double>();
    if (het.contains("k")) pc.heterogeneity.k = het.at("k").get<double>();
    if (het.contains("epsilon"))
      pc.heterogeneity.epsilon = het.at("epsilon").get<double>();
    if (het.contains("loss")) pc.heterogeneity.loss = het.at("loss").get<double>();
    if (het.contains("theta")) pc.heterogeneity.theta = het.at("theta").get<double>();
    const auto run = run_population(pc);
    if (!config.plot.empty()) emit_plot_series(run, config.plot);
    artifact = format == "json" ? dump_json(json(run)) : simulation_to_csv(run);
  } else if (cmd == "calibrate") {
    const auto series = load_series(params.at("series").get<std::string>());
    std::vector<std::string> free_names;
    for (const auto& name : params.at("free"))
      free_names.push_back(name.get<std::string>());
    std::map<std::string, std::pair<double, double>> bounds;
    for (const auto& [name, pair] : params.at("bounds").items())
      bounds[name] = {pair[0].get<double>(), pair[1].get<double>()};
    const auto result =
        fit_replicator(series, free_names, bounds, replicator_from(params));
    if (!config.plot.empty()) emit_plot_series(result.fitted_path, config.plot);
    artifact = format == "json" ? dump_json(json(result))
                                : series_to_csv(result.fitted_path);
  } else {
    throw ValidationError("command", "unknown command '" + cmd + "'");
  }

  write_text(artifact, config.output, out);
}

}  // namespace

int execute(const RunConfig& config, std::ostream& out, std::ostream& diag) {
  try {
    if (config.command.empty())
      throw ValidationError("command", "missing command");
    const json params = validate_params(config.command, config.params);
    std::string format = config.format;
    if (format.empty()) format = default_formats().at(config.command);
    if (format != "csv" && format != "json")
      throw ValidationError("format", "must be 'csv' or 'json'");
    if (!config.plot.empty() && !plot_supported(config.command))
      throw ValidationError("plot", "command '" + config.command +
                                        "' produces no plottable series");
    run_command(config, params, format, out);
    return kExitOk;
  } catch (const ValidationError& e) {
    diag << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

// ---------------------------------------------------------------------------
// Flag parsing.

namespace {

double parse_flag_number(const std::string& flag, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last)
    throw ValidationError(flag, "not a number: '" + text + "'");
  return v;
}

// Binds flags for one subcommand and collects only the values actually set.
struct FlagBinder {
  CLI::App* sub;
  json params = json::object();
  std::vector<std::function<void()>> collectors;

  void number(const std::string& flag, const std::string& key) {
    auto holder = std::make_shared<double>();
    auto* opt = sub->add_option(flag, *holder);
    collectors.push_back([this, holder, opt, key] {
      if (opt->count()) params[key] = *holder;
    });
  }
  void integer(const std::string& flag, const std::string& key) {
    auto holder = std::make_shared<std::int64_t>();
    auto* opt = sub->add_option(flag, *holder);
    collectors.push_back([this, holder, opt, key] {
      if (opt->count()) params[key] = *holder;
    });
  }
  void text(const std::string& flag, const std::string& key) {
    auto holder = std::make_shared<std::string>();
    auto* opt = sub->add_option(flag, *holder);
    collectors.push_back([this, holder, opt, key] {
      if (opt->count()) params[key] = *holder;
    });
  }
  void collect() {
    for (const auto& c : collectors) c();
  }

  void baseline() {
    number("--p0", "p0");
    number("--alpha-mit", "alpha_mit");
    number("--k", "k");
    number("--epsilon", "epsilon");
    number("--loss", "loss");
    number("--theta", "theta");
    number("--ns", "n_s");
    number("--na", "n_a");
  }
  void replicator() {
    number("--alpha-net", "alpha_net");
    number("--gamma", "gamma");
    number("--p0", "p0");
    number("--alpha-mit", "alpha_mit");
    number("--k", "k");
    number("--epsilon", "epsilon");
    number("--loss", "loss");
  }
};

struct CommonFlags {
  std::string config_path;
  std::string output;
  std::string format;
  std::string plot;
  std::uint64_t seed = 0;
  CLI::Option* config_opt = nullptr;
  CLI::Option* output_opt = nullptr;
  CLI::Option* format_opt = nullptr;
  CLI::Option* plot_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
};

void add_common(CLI::App* sub, CommonFlags& common, bool with_plot, bool with_seed) {
  common.config_opt = sub->add_option("--config", common.config_path,
                                      "JSON config file (flags override it)");
  common.output_opt = sub->add_option("--output", common.output,
                                      "output path (default: stdout)");
  common.format_opt = sub->add_option("--format", common.format, "csv or json");
  if (with_plot)
    common.plot_opt = sub->add_option("--plot", common.plot,
                                      "also write a plot-ready CSV here");
  if (with_seed)
    common.seed_opt = sub->add_option("--seed", common.seed, "RNG seed");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& diag) {
  CLI::App app{"payment-system migration lab"};
  app.require_subcommand(0, 1);

  struct SubState {
    CLI::App* sub = nullptr;
    std::shared_ptr<FlagBinder> binder;
    CommonFlags common;
  };
  std::map<std::string, SubState> subs;

  const auto make_sub = [&](const std::string& name, const std::string& desc,
                            bool with_plot, bool with_seed) -> SubState& {
    SubState& st = subs[name];
    st.sub = app.add_subcommand(name, desc);
    st.binder = std::make_shared<FlagBinder>();
    st.binder->sub = st.sub;
    add_common(st.sub, st.common, with_plot, with_seed);
    return st;
  };

  {
    auto& st = make_sub("effort", "optimal mitigation effort and its utility", false, false);
    st.binder->baseline();
  }
  {
    auto& st = make_sub("threshold", "critical sanction probability and decision", false, false);
    st.binder->baseline();
  }
  {
    auto& st = make_sub("equilibria", "replicator fixed points and stability", false, false);
    st.binder->replicator();
    st.binder->integer("--grid-n", "grid_n");
    st.binder->number("--tol", "tol");
  }
  {
    auto& st = make_sub("simulate", "integrate the adoption share", true, false);
    st.binder->replicator();
    st.binder->number("--s0", "s0");
    st.binder->number("--t-end", "t_end");
    st.binder->number("--dt", "dt");
  }
  std::vector<std::string> shock_specs;
  {
    auto& st = make_sub("scenario", "shock schedule with tipping detection", true, false);
    st.binder->replicator();
    st.binder->number("--s0", "s0");
    st.binder->number("--t-end", "t_end");
    st.binder->number("--dt", "dt");
    st.sub->add_option("--shock", shock_specs,
                       "shock as time:field:value (repeatable)");
  }
  {
    auto& st = make_sub("sweep", "bifurcation diagram over one parameter", true, false);
    st.binder->replicator();
    st.binder->text("--parameter", "parameter");
    st.binder->number("--lo", "lo");
    st.binder->number("--hi", "hi");
    st.binder->integer("--n", "n");
  }
  {
    auto& st = make_sub("hysteresis", "up/down continuation scan", false, false);
    st.binder->replicator();
    st.binder->text("--parameter", "parameter");
    st.binder->number("--lo", "lo");
    st.binder->number("--hi", "hi");
    st.binder->integer("--n", "n");
    st.binder->number("--relax-t", "relax_t");
    st.binder->number("--s0", "s0");
    st.binder->number("--dt", "dt");
  }
  std::vector<std::string> het_specs;
  {
    auto& st = make_sub("abm", "seeded population simulation", true, true);
    st.binder->number("--p0", "p0");
    st.binder->number("--alpha-mit", "alpha_mit");
    st.binder->number("--k", "k");
    st.binder->number("--epsilon", "epsilon");
    st.binder->number("--loss", "loss");
    st.binder->number("--theta", "theta");
    st.binder->number("--ns", "n_s");
    st.binder->number("--na", "n_a");
    st.binder->integer("--n-agents", "n_agents");
    st.binder->number("--mu", "mu");
    st.binder->integer("--rounds", "rounds");
    st.binder->number("--initial-share-alt", "initial_share_alt");
    st.sub->add_option("--het", het_specs, "heterogeneity as field=width (repeatable)");
  }
  std::vector<std::string> bound_specs;
  {
    auto& st = make_sub("calibrate", "least-squares fit to a share series", true, false);
    st.binder->replicator();
    st.binder->text("--series", "series");
    st.binder->text("--free", "free_csv");  // staged, converted below
    st.sub->add_option("--bound", bound_specs, "bound as name=lo:hi (repeatable)");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    diag << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    RunConfig config;
    for (auto& [name, st] : subs) {
      if (!st.sub->parsed()) continue;
      config.command = name;
      st.binder->collect();
      config.params = st.binder->params;

      // Staged conversions for the repeatable/structured flags.
      if (name == "scenario" && !shock_specs.empty()) {
        json shocks = json::array();
        for (const auto& spec : shock_specs) {
          const auto c1 = spec.find(':');
          const auto c2 = spec.find(':', c1 == std::string::npos ? c1 : c1 + 1);
          if (c1 == std::string::npos || c2 == std::string::npos)
            throw ValidationError("shock", "expected time:field:value, got '" + spec + "'");
          shocks.push_back({{"time", parse_flag_number("shock", spec.substr(0, c1))},
                            {"field", spec.substr(c1 + 1, c2 - c1 - 1)},
                            {"value", parse_flag_number("shock", spec.substr(c2 + 1))}});
        }
        config.params["shocks"] = shocks;
      }
      if (name == "abm" && !het_specs.empty()) {
        json het = json::object();
        for (const auto& spec : het_specs) {
          const auto eq = spec.find('=');
          if (eq == std::string::npos)
            throw ValidationError("het", "expected field=width, got '" + spec + "'");
          het[spec.substr(0, eq)] = parse_flag_number("het", spec.substr(eq + 1));
        }
        config.params["heterogeneity"] = het;
      }
      if (name == "calibrate") {
        if (config.params.contains("free_csv")) {
          const std::string free_csv = config.params["free_csv"].get<std::string>();
          config.params.erase("free_csv");
          json free = json::array();
          std::stringstream ss(free_csv);
          std::string item;
          while (std::getline(ss, item, ','))
            if (!item.empty()) free.push_back(item);
          config.params["free"] = free;
        }
        if (!bound_specs.empty()) {
          json bounds = json::object();
          for (const auto& spec : bound_specs) {
            const auto eq = spec.find('=');
            const auto colon = eq == std::string::npos ? eq : spec.find(':', eq + 1);
            if (eq == std::string::npos || colon == std::string::npos)
              throw ValidationError("bound", "expected name=lo:hi, got '" + spec + "'");
            bounds[spec.substr(0, eq)] = {
                parse_flag_number("bound", spec.substr(eq + 1, colon - eq - 1)),
                parse_flag_number("bound", spec.substr(colon + 1))};
          }
          config.params["bounds"] = bounds;
        }
      }

      if (st.common.output_opt->count()) config.output = st.common.output;
      if (st.common.format_opt->count()) config.format = st.common.format;
      if (st.common.plot_opt && st.common.plot_opt->count()) config.plot = st.common.plot;
      if (st.common.seed_opt && st.common.seed_opt->count()) config.seed = st.common.seed;

      // Merge with the config file: flags override file values.
      if (st.common.config_opt->count()) {
        std::ifstream in(st.common.config_path);
        if (!in)
          throw ValidationError("config", "cannot open file: " + st.common.config_path);
        json file;
        try {
          file = json::parse(in);
        } catch (const json::parse_error& e) {
          throw ValidationError("config", std::string("invalid JSON: ") + e.what());
        }
        if (!file.is_object()) throw ValidationError("config", "must be a JSON object");
        for (const auto& [key, value] : file.items()) {
          if (key == "command") {
            if (!value.is_string()) throw ValidationError("command", "must be a string");
            // the subcommand on the command line wins
          } else if (key == "params") {
            if (!value.is_object()) throw ValidationError("params", "must be an object");
            for (const auto& [pk, pv] : value.items())
              if (!config.params.contains(pk)) config.params[pk] = pv;
          } else if (key == "output") {
            if (config.output.empty()) config.output = value.get<std::string>();
          } else if (key == "format") {
            if (config.format.empty()) config.format = value.get<std::string>();
          } else if (key == "seed") {
            if (!config.seed) config.seed = value.get<std::uint64_t>();
          } else if (key == "plot") {
            if (config.plot.empty()) config.plot = value.get<std::string>();
          } else {
            throw ValidationError(key, "unknown config key");
          }
        }
      }
      return execute(config, out, diag);
    }
    throw ValidationError("command", "missing command (try --help)");
  } catch (const ValidationError& e) {
    diag << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    diag << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace pml
