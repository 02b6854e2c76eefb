#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "gradcat/io.hpp"
#include "gradcat/report.hpp"
#include "gradcat/suites.hpp"

using namespace gradcat;

namespace {

struct OutputOptions {
  std::string format = "text";
  bool timing = true;
};

void add_output_options(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--format", out.format, "Report format")->check(CLI::IsMember({"json", "text"}));
  cmd->add_flag("!--no-timing", out.timing, "Omit the timing block");
}

int emit(const Report& rep, const OutputOptions& out) {
  if (out.format == "json")
    std::cout << rep.to_json(out.timing).dump(2) << "\n";
  else
    std::cout << rep.to_text(out.timing);
  return static_cast<int>(rep.status());
}

std::string echo(int argc, char** argv) {
  std::string s = "gradcat";
  for (int i = 1; i < argc; ++i) s += std::string(" ") + argv[i];
  return s;
}

int write_corpus(const std::string& dir, std::uint32_t count) {
  std::filesystem::create_directories(dir);
  std::vector<std::pair<std::string, FunctorPresentation>> files{
      {"id.json", identity_presentation()},       {"c01.json", c01_presentation()},
      {"const1.json", constant_one_presentation()}, {"square.json", square_presentation()},
      {"x-plus-x.json", x_plus_x_presentation()}};
  for (std::uint32_t seed = 1; seed <= count; ++seed) {
    auto p = random_presentation(seed);
    files.emplace_back(p.name + ".json", p);
  }
  for (const auto& [name, p] : files) {
    std::ofstream(std::filesystem::path(dir) / name) << presentation_document(p);
    std::cout << (std::filesystem::path(dir) / name).string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-scale checks for graduated categories and finitary set functors"};
  app.set_version_flag("--version", "gradcat " + tool_version());
  app.require_subcommand(1);
  const std::string command = echo(argc, argv);

  OutputOptions out;
  std::string spec_path;
  std::size_t size = 0;
  std::optional<std::uint64_t> guard;
  SuiteConfig suite;

  auto* grade = app.add_subcommand("grade", "Grade of an object spec and its grade axioms");
  grade->add_option("spec", spec_path, "Spec file with an object payload")->required();
  add_output_options(grade, out);

  auto* classify = app.add_subcommand("classify", "Classify a functor spec (products, trichotomy, exponent form)");
  classify->add_option("spec", spec_path, "Spec file with a functor payload")->required();
  classify->add_option("--size", size, "Product bound N")->default_val(4);
  classify->add_option("--guard", guard, "Term-instance guard");
  add_output_options(classify, out);

  auto* check = app.add_subcommand("check", "Verify any spec: object, functor, chain, square or suite");
  check->add_option("spec", spec_path, "Spec file")->required();
  check->add_option("--guard", guard, "Term-instance guard");
  add_output_options(check, out);

  auto* run = app.add_subcommand("suite", "Run a verification suite");
  run->add_option("name", suite.name, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  run->add_option("--size", suite.size, "Size bound (per-suite default when omitted)");
  run->add_option("--depth", suite.depth, "Depth bound (per-suite default when omitted)");
  run->add_option("--guard", suite.guard, "Term-instance guard");
  run->add_option("--corpus", suite.corpus, "Directory of functor presentations");
  run->add_option("--jobs", suite.jobs, "Worker threads (0: all cores)");
  add_output_options(run, out);

  std::string corpus_dir;
  std::uint32_t corpus_count = 12;
  auto* corpus = app.add_subcommand("corpus", "Write the standard corpus of presentations");
  corpus->add_option("dir", corpus_dir, "Output directory")->required();
  corpus->add_option("--random", corpus_count, "Number of seeded random presentations")->default_val(12);

  CLI11_PARSE(app, argc, argv);

  try {
    const std::uint64_t g = guard ? *guard : default_guard();
    if (*corpus) return write_corpus(corpus_dir, corpus_count);
    if (*run) return emit(run_suite(suite, command), out);

    SpecFile spec = parse_spec_file(spec_path);
    if (*grade) {
      auto* obj = std::get_if<ObjectSpec>(&spec.payload);
      if (!obj) throw SpecError(ExitStatus::SchemaError, "object", "grade expects an object payload");
      return emit(grade_command(obj->object, command), out);
    }
    if (*classify) {
      auto* fn = std::get_if<FunctorSpec>(&spec.payload);
      if (!fn) throw SpecError(ExitStatus::SchemaError, "functor", "classify expects a functor payload");
      if (size < 2) throw SpecError(ExitStatus::SchemaError, "--size", "the product bound must be at least 2");
      return emit(classify_command(*fn, size, g, command), out);
    }
    return std::visit(
        [&](const auto& payload) -> int {
          using T = std::decay_t<decltype(payload)>;
          if constexpr (std::is_same_v<T, ObjectSpec>) return emit(grade_command(payload.object, command), out);
          else if constexpr (std::is_same_v<T, FunctorSpec>) return emit(classify_command(payload, 4, g, command), out);
          else if constexpr (std::is_same_v<T, ChainSpec>) return emit(chain_command(payload, command), out);
          else if constexpr (std::is_same_v<T, SquareSpec>) return emit(square_command(payload, g, command), out);
          else {
            SuiteConfig c = payload;
            if (guard) c.guard = guard;
            return emit(run_suite(c, command), out);
          }
        },
        spec.payload);
  } catch (const SpecError& e) {
    std::cerr << "gradcat: " << e.what() << "\n";
    return static_cast<int>(e.status());
  } catch (const ResourceError& e) {
    std::cerr << "gradcat: " << e.what() << "\n";
    return static_cast<int>(ExitStatus::ResourceGuard);
  } catch (const ContractViolation& e) {
    std::cerr << "gradcat: " << e.what() << "\n";
    return static_cast<int>(ExitStatus::SchemaError);
  } catch (const Error& e) {
    std::cerr << "gradcat: " << e.what() << "\n";
    return static_cast<int>(ExitStatus::Failure);
  }
}
