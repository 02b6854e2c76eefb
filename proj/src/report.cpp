#include "gradcat/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <sstream>
#include <thread>

#ifndef GRADCAT_VERSION
#define GRADCAT_VERSION "0.0.0"
#endif

namespace gradcat {

using nlohmann::json;

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Guard: return "guard";
  }
  return "?";
}

std::string tool_version() { return GRADCAT_VERSION; }

void Report::add(CheckResult c) {
  auto pos = std::upper_bound(checks.begin(), checks.end(), c.id,
                              [](const std::string& id, const CheckResult& r) { return id < r.id; });
  checks.insert(pos, std::move(c));
}

std::size_t Report::count(Verdict v) const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [&](const CheckResult& c) { return c.verdict == v; }));
}

ExitStatus Report::status() const {
  if (count(Verdict::Fail) > 0) return ExitStatus::Failure;
  if (count(Verdict::Guard) > 0) return ExitStatus::ResourceGuard;
  return ExitStatus::Pass;
}

json Report::to_json(bool with_timing) const {
  json arr = json::array();
  for (const auto& c : checks) {
    json o{{"id", c.id}, {"verdict", to_string(c.verdict)}, {"summary", c.summary}, {"details", c.details}};
    if (!c.witness.empty()) o["witness"] = c.witness;
    arr.push_back(std::move(o));
  }
  json out{{"tool", "gradcat"},
           {"version", tool_version()},
           {"command", command},
           {"status", static_cast<int>(status())},
           {"counts", {{"pass", count(Verdict::Pass)}, {"fail", count(Verdict::Fail)}, {"guard", count(Verdict::Guard)}}},
           {"checks", arr}};
  if (with_timing) {
    json per = json::object();
    double total = 0;
    for (const auto& c : checks) {
      per[c.id] = c.seconds;
      total += c.seconds;
    }
    out["timing"] = {{"check_seconds_total", total}, {"checks", per}};
  }
  return out;
}

std::string Report::to_text(bool with_timing) const {
  std::ostringstream os;
  os << "gradcat " << tool_version() << ": " << command << "\n";
  for (const auto& c : checks) {
    std::string tag = to_string(c.verdict);
    for (auto& ch : tag) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    os << "[" << tag << "] " << c.id;
    if (!c.summary.empty()) os << ": " << c.summary;
    os << "\n";
    if (!c.witness.empty()) os << "    witness: " << c.witness << "\n";
  }
  os << count(Verdict::Pass) << " passed, " << count(Verdict::Fail) << " failed, " << count(Verdict::Guard)
     << " hit the guard; exit " << static_cast<int>(status()) << "\n";
  if (with_timing) {
    double total = 0;
    for (const auto& c : checks) total += c.seconds;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", total);
    os << "timing: " << buf << " s of check time\n";
  }
  return os.str();
}

CheckResult run_check(const std::string& id, const std::function<CheckResult()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = fn();
  } catch (const ResourceError& e) {
    r = CheckResult{};
    r.verdict = Verdict::Guard;
    r.summary = "resource guard tripped";
    r.witness = e.what();
  } catch (const TheoremViolation& e) {
    r = CheckResult{};
    r.verdict = Verdict::Fail;
    r.summary = "theorem violation";
    r.witness = e.what();
  } catch (const Error& e) {
    r = CheckResult{};
    r.verdict = Verdict::Fail;
    r.summary = "error";
    r.witness = e.what();
  }
  r.id = id;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CheckResult> run_checks(std::vector<std::pair<std::string, std::function<CheckResult()>>> tasks,
                                    std::size_t jobs) {
  std::vector<CheckResult> out(tasks.size());
  if (jobs == 0) jobs = std::max(1U, std::thread::hardware_concurrency());
  jobs = std::min(jobs, tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) out[i] = run_check(tasks[i].first, tasks[i].second);
  };
  if (jobs <= 1) {
    worker();
    return out;
  }
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace gradcat
