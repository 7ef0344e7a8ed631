// File round-trips for algebras and catalog manifests, plus the shipped
// sample files under data/: every builtin must survive save/load unchanged
// (same tables, same digest), and the committed samples must stay equal to
// the builtins they mirror.

#include <catch2/catch_amalgamated.hpp>

#include <huq/catalog.hpp>
#include <huq/io.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

using namespace huq;
using Catch::Matchers::ContainsSubstring;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& stem) {
    path = (std::filesystem::temp_directory_path() / stem).string();
  }
  ~TempFile() { std::remove(path.c_str()); }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("algebras survive a save/load round-trip byte-for-byte", "[io]") {
  for (const auto& name : builtin_names()) {
    INFO("algebra: " << name);
    auto original = builtin(name);
    TempFile f("huq-io-roundtrip-" + name + ".json");
    save_algebra(f.path, *original);
    auto loaded = load_algebra(f.path);
    CHECK(algebra_equal(original, loaded));
    CHECK(loaded->name() == original->name());
    CHECK(algebra_digest(*loaded) == algebra_digest(*original));
  }
}

TEST_CASE("the shipped sample files mirror the builtin catalog", "[io]") {
  const std::string manifest = std::string(HUQ_DATA_DIR) + "/manifest.json";
  auto loaded = load_manifest(manifest);
  auto names = builtin_names();
  REQUIRE(loaded.size() == names.size());
  for (std::size_t i = 0; i < names.size(); ++i) {
    INFO("entry " << i << ": " << names[i]);
    auto b = builtin(names[i]);
    CHECK(loaded[i]->name() == names[i]);
    CHECK(algebra_equal(loaded[i], b));
    CHECK(algebra_digest(*loaded[i]) == algebra_digest(*b));
  }
}

TEST_CASE("manifest loading rejects malformed input", "[io]") {
  SECTION("a missing manifest names the path") {
    CHECK_THROWS_WITH(load_manifest("/nonexistent/manifest.json"),
                      ContainsSubstring("cannot open manifest"));
  }
  SECTION("the document must be an object with an algebras array") {
    TempFile f("huq-io-manifest-shape.json");
    write_text(f.path, "[1, 2, 3]");
    CHECK_THROWS_WITH(load_manifest(f.path),
                      ContainsSubstring("must be {\"algebras\": [paths]}"));
  }
  SECTION("entries must be path strings") {
    TempFile f("huq-io-manifest-entries.json");
    write_text(f.path, R"({"algebras": [42]})");
    CHECK_THROWS_WITH(load_manifest(f.path),
                      ContainsSubstring("manifest entries must be path strings"));
  }
  SECTION("a parse error carries the manifest path") {
    TempFile f("huq-io-manifest-parse.json");
    write_text(f.path, "{not json");
    CHECK_THROWS_WITH(load_manifest(f.path),
                      ContainsSubstring("huq-io-manifest-parse.json"));
  }
  SECTION("relative entries resolve against the manifest's directory") {
    auto dir = std::filesystem::temp_directory_path() / "huq-io-manifest-rel";
    std::filesystem::create_directories(dir);
    save_algebra((dir / "a.json").string(), *builtin("group-z2"));
    write_text((dir / "m.json").string(), R"({"algebras": ["a.json"]})");
    auto loaded = load_manifest((dir / "m.json").string());
    REQUIRE(loaded.size() == 1);
    CHECK(algebra_equal(loaded[0], builtin("group-z2")));
    std::filesystem::remove_all(dir);
  }
}
