#include "wpevo/harness/io.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "wpevo/errors.hpp"

namespace wpevo::io {

using nlohmann::json;

void ensure_directory(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw ConfigError("cannot create output directory '" + dir + "'");
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << text;
  if (!out) throw ConfigError("failed writing '" + path + "'");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string stats_csv(const RunResult& result) {
  std::string out =
      "gen,task_index,task_id,mean_task_fit,max_task_fit,mean_revised,max_revised,"
      "mean_connections\n";
  for (const auto& s : result.stats) {
    out += fmt::format("{},{},{},{},{},{},{},{}\n", s.generation, s.task_index,
                       task_name(s.task), s.mean_task_fitness, s.max_task_fitness,
                       s.mean_revised, s.max_revised, s.mean_connections);
  }
  return out;
}

std::string retention_csv(const RunResult& result) {
  std::string out = "after_task_index,task_id,task1_fitness\n";
  for (const auto& r : result.retention) {
    out += fmt::format("{},{},{}\n", r.after_task_index, task_name(r.task), r.task1_fitness);
  }
  return out;
}

std::string sweep_csv(const SweepResult& result) {
  std::string out = "lambda1,lambda2,individual_index,penalty,task1_fitness,task2_fitness\n";
  for (const auto& s : result.samples) {
    out += fmt::format("{},{},{},{},{},{}\n", s.lambdas.lambda1, s.lambdas.lambda2,
                       s.individual_index, s.penalty, s.task1_fitness, s.task2_fitness);
  }
  return out;
}

std::string sweep_summary_csv(const SweepResult& result) {
  std::string out = "lambda1,lambda2,samples,mean_task1,mean_task2,spearman\n";
  for (const auto& c : result.cells) {
    out += fmt::format("{},{},{},{},{},{}\n", c.lambdas.lambda1, c.lambdas.lambda2, c.samples,
                       c.mean_task1, c.mean_task2, c.spearman);
  }
  return out;
}

std::string comparison_csv(const ComparisonResult& result) {
  std::string out = "technique";
  for (std::size_t t = 0; t < result.tasks.size(); ++t) {
    out += fmt::format(",task{}_mean,task{}_best", t + 1, t + 1);
  }
  out += ",overall_mean,overall_best\n";
  for (const auto& s : result.summaries) {
    out += technique_name(s.technique);
    for (std::size_t t = 0; t < result.tasks.size(); ++t) {
      out += fmt::format(",{},{}", s.mean_task_fitness[t], s.best_run_task_fitness[t]);
    }
    out += fmt::format(",{},{}\n", s.mean_overall, s.best_overall);
  }
  return out;
}

std::string runs_csv(const ComparisonResult& result) {
  std::string out = "technique,repeat,seed";
  for (std::size_t t = 0; t < result.tasks.size(); ++t) out += fmt::format(",task{}", t + 1);
  for (std::size_t t = 0; t < result.tasks.size(); ++t) out += fmt::format(",retention{}", t + 1);
  out += ",overall\n";
  for (const auto& run : result.runs) {
    out += fmt::format("{},{},{}", technique_name(run.technique), run.repeat, run.seed);
    for (double f : run.final_task_fitness) out += fmt::format(",{}", f);
    for (double f : run.retention) out += fmt::format(",{}", f);
    out += fmt::format(",{}\n", run.overall);
  }
  return out;
}

std::string summary_json(const ComparisonResult& result) {
  json root;
  json tasks = json::array();
  for (TaskId id : result.tasks) tasks.push_back(std::string(task_name(id)));
  root["tasks"] = tasks;
  json techniques = json::object();
  for (const auto& s : result.summaries) {
    json entry;
    json per_task = json::object();
    for (std::size_t t = 0; t < result.tasks.size(); ++t) {
      per_task[std::string(task_name(result.tasks[t]))] = {
          {"mean", s.mean_task_fitness[t]}, {"best", s.best_run_task_fitness[t]}};
    }
    entry["tasks"] = per_task;
    entry["overall"] = {{"mean", s.mean_overall}, {"best", s.best_overall}};
    entry["retention_mean"] = s.mean_retention;
    techniques[std::string(technique_name(s.technique))] = entry;
  }
  root["techniques"] = techniques;
  root["repeats"] = result.runs.size() / kAllTechniques.size();
  return root.dump(2) + "\n";
}

std::string run_to_json(const RunResult& result) {
  json root;
  root["technique"] = std::string(technique_name(result.technique));
  json tasks = json::array();
  for (TaskId id : result.task_sequence) tasks.push_back(std::string(task_name(id)));
  root["tasks"] = tasks;
  json stats = json::array();
  for (const auto& s : result.stats) {
    stats.push_back({{"gen", s.generation},
                     {"task_index", s.task_index},
                     {"task_id", std::string(task_name(s.task))},
                     {"mean_task_fit", s.mean_task_fitness},
                     {"max_task_fit", s.max_task_fitness},
                     {"mean_revised", s.mean_revised},
                     {"max_revised", s.max_revised},
                     {"mean_connections", s.mean_connections}});
  }
  root["stats"] = stats;
  json retention = json::array();
  for (const auto& r : result.retention) {
    retention.push_back({{"after_task_index", r.after_task_index},
                         {"task_id", std::string(task_name(r.task))},
                         {"task1_fitness", r.task1_fitness}});
  }
  root["retention"] = retention;
  root["final_task_fitness"] = result.final_task_fitness;
  root["best_genome"] = serialize(result.best);
  root["converged"] = result.converged;
  root["visits"] = result.visits;
  return root.dump(2) + "\n";
}

RunResult run_from_json(const std::string& text) {
  RunResult result;
  try {
    const json root = json::parse(text);
    result.technique = parse_technique(root.at("technique").get<std::string>());
    for (const auto& t : root.at("tasks")) result.task_sequence.push_back(parse_task(t.get<std::string>()));
    for (const auto& s : root.at("stats")) {
      GenerationStats g;
      g.generation = s.at("gen").get<std::size_t>();
      g.task_index = s.at("task_index").get<std::size_t>();
      g.task = parse_task(s.at("task_id").get<std::string>());
      g.mean_task_fitness = s.at("mean_task_fit").get<double>();
      g.max_task_fitness = s.at("max_task_fit").get<double>();
      g.mean_revised = s.at("mean_revised").get<double>();
      g.max_revised = s.at("max_revised").get<double>();
      g.mean_connections = s.at("mean_connections").get<double>();
      result.stats.push_back(g);
    }
    for (const auto& r : root.at("retention")) {
      result.retention.push_back({r.at("after_task_index").get<std::size_t>(),
                                  parse_task(r.at("task_id").get<std::string>()),
                                  r.at("task1_fitness").get<double>()});
    }
    result.final_task_fitness = root.at("final_task_fitness").get<std::vector<double>>();
    result.best = deserialize(root.at("best_genome").get<std::string>());
    result.converged = root.at("converged").get<bool>();
    result.visits = root.at("visits").get<std::vector<std::size_t>>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("result.json: ") + e.what());
  }
  return result;
}

void write_run(const RunResult& result, const RunConfig& config, const std::string& dir) {
  ensure_directory(dir);
  write_text(dir + "/stats.csv", stats_csv(result));
  write_text(dir + "/retention.csv", retention_csv(result));
  write_text(dir + "/best.genome", serialize(result.best));
  write_text(dir + "/result.json", run_to_json(result));
  write_text(dir + "/config.cfg", to_key_values(config).to_text());
}

}  // namespace wpevo::io
