#pragma once

// JSON spec files: a version tag plus exactly one payload (functor, object,
// chain, square or suite configuration), and the corpus of presentations.

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gradcat/adjoint.hpp"
#include "gradcat/category.hpp"
#include "gradcat/chain.hpp"
#include "gradcat/error.hpp"
#include "gradcat/functor.hpp"
#include "json.hpp"

namespace gradcat {

enum class ExitStatus : int {
  Pass = 0,
  Failure = 1,
  ParseError = 2,
  SchemaError = 3,
  ResourceGuard = 4,
  UnknownVersion = 5,
  UnknownBuiltin = 6,
};

inline constexpr int kSpecVersion = 1;

// A rejected spec; path is a JSON pointer-like location such as
// "functor.eqs[0].lhs.args".
class SpecError : public Error {
public:
  SpecError(ExitStatus status, std::string path, const std::string& message);
  ExitStatus status() const { return status_; }
  const std::string& path() const { return path_; }

private:
  ExitStatus status_;
  std::string path_;
};

struct FunctorSpec {
  std::string builtin;                          // empty for explicit presentations
  std::optional<FunctorPresentation> presentation;

  std::string name() const;
  FunctorPtr instantiate(std::uint64_t guard = default_guard()) const;
};

struct ObjectSpec {
  CatObject object;
};

struct ChainSpec {
  BuiltinChain chain = BuiltinChain::CyclicGroups;
  std::size_t depth = 20;
};

// Two subobjects of one object; optionally the functor to test the
// intersection square against.
struct SquareSpec {
  IntersectionSquare square;
  std::optional<FunctorSpec> functor;
  std::optional<CatObject> hom;
  std::size_t max_apex = 3;
};

struct SuiteConfig {
  std::string name = "all";
  std::optional<std::size_t> size;
  std::optional<std::size_t> depth;
  std::optional<std::uint64_t> guard;
  std::string corpus;     // directory; empty means the built-in default
  std::size_t jobs = 0;   // 0: hardware concurrency
};

using SpecPayload = std::variant<FunctorSpec, ObjectSpec, ChainSpec, SquareSpec, SuiteConfig>;

struct SpecFile {
  int version = kSpecVersion;
  SpecPayload payload;
};

SpecFile parse_spec_text(const std::string& text);
SpecFile parse_spec_file(const std::string& path);

// Individual payload readers, for embedding in larger documents.
Label label_from_json(const nlohmann::json& j, const std::string& path);
nlohmann::json label_to_json(const Label& l);
FunctorSpec functor_from_json(const nlohmann::json& j, const std::string& path);
CatId category_from_json(const nlohmann::json& j, const std::string& path);
CatObject object_from_json(const nlohmann::json& j, const std::string& path);

nlohmann::json presentation_to_json(const FunctorPresentation& p);
// A complete spec document holding one presentation.
std::string presentation_document(const FunctorPresentation& p);

// Small random presentation, fully determined by the seed.
FunctorPresentation random_presentation(std::uint32_t seed);

struct CorpusEntry {
  std::string file;   // base name
  FunctorSpec spec;
};

// Every *.json in dir holding a functor payload, sorted by file name.
std::vector<CorpusEntry> load_corpus(const std::string& dir);
std::string default_corpus_dir();

}  // namespace gradcat
