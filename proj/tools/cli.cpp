#include "valmono/cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"

namespace valmono {

namespace {

template <class Fn>
void for_each_parallel(std::size_t n, unsigned jobs, Fn fn) {
  const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(i);
    });
  for (auto& t : pool) t.join();
}

bool read_json(const std::string& path, Json& out, std::ostream& err) {
  std::ifstream in(path);
  if (!in) {
    err << "error: cannot open '" << path << "'\n";
    return false;
  }
  try {
    out = Json::parse(in);
  } catch (const Json::exception& e) {
    err << "error: " << path << ": " << e.what() << "\n";
    return false;
  }
  return true;
}

}  // namespace

Json run_batch(const Json& input, const RunOptions& opts, unsigned jobs) {
  if (!input.is_array()) return run_problem(input, opts);
  std::vector<Json> traces(input.size());
  for_each_parallel(input.size(), jobs, [&](std::size_t i) { traces[i] = run_problem(input[i], opts); });
  Json out = Json::array();
  for (auto& t : traces) out.push_back(std::move(t));
  return out;
}

int batch_exit_code(const Json& traces) {
  if (!traces.is_array()) return trace_exit_code(traces);
  int code = kExitOk;
  for (const auto& t : traces) code = std::max(code, trace_exit_code(t));
  return code;
}

int cmd_run(const std::string& path, const std::string& out_path, const RunOptions& opts,
            unsigned jobs, std::ostream& out, std::ostream& err) {
  Json input;
  if (!read_json(path, input, err)) return kExitSchema;
  const Json traces = run_batch(input, opts, jobs);
  const std::string text = traces.dump(2) + "\n";
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(out_path);
    if (!f || !(f << text)) {
      err << "error: cannot write '" << out_path << "'\n";
      return kExitSchema;
    }
  }
  const auto report = [&](const Json& t) {
    if (trace_exit_code(t) != kExitOk) err << "error: " << t["verdict"]["error"].get<std::string>() << "\n";
  };
  if (traces.is_array())
    for (const auto& t : traces) report(t);
  else
    report(traces);
  return batch_exit_code(traces);
}

int cmd_verify(const std::string& path, unsigned jobs, std::ostream& out, std::ostream& err) {
  Json traces;
  if (!read_json(path, traces, err)) return kExitSchema;
  if (!traces.is_array()) traces = Json::array({traces});
  std::vector<VerifyReport> reports(traces.size());
  for_each_parallel(traces.size(), jobs, [&](std::size_t i) { reports[i] = verify_trace(traces[i]); });
  int code = kExitOk;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (reports[i].exit_code == kExitOk) continue;
    code = std::max(code, reports[i].exit_code);
    err << (reports.size() > 1 ? "trace " + std::to_string(i) + ": " : std::string()) << reports[i].message
        << "\n";
  }
  if (code == kExitOk) out << "ok: " << reports.size() << " trace(s) verified\n";
  return code;
}

int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact valuation-theoretic monomialization"};
  app.require_subcommand(1);

  std::string out_path, auto_ind = "on";
  std::int64_t budget = 100000;
  unsigned jobs = 1;
  app.add_option("--out", out_path, "Write traces here instead of stdout");
  app.add_option("--budget", budget, "Step budget per game")->check(CLI::PositiveNumber);
  app.add_option("--auto-independence", auto_ind, "Declare independence automatically")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_option("--jobs", jobs, "Worker threads for batch input")->check(CLI::PositiveNumber);

  std::string run_file, trace_file;
  auto* run = app.add_subcommand("run", "Run a problem file (object or array of objects)");
  run->add_option("file", run_file)->required();
  auto* verify = app.add_subcommand("verify", "Re-verify a trace file");
  verify->add_option("trace", trace_file)->required();
  for (auto* sub : {run, verify}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitSchema;
  }
  const RunOptions opts{budget, auto_ind == "on"};
  if (run->parsed()) return cmd_run(run_file, out_path, opts, jobs, out, err);
  return cmd_verify(trace_file, jobs, out, err);
}

}  // namespace valmono
