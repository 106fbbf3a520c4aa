#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "adaptmhd/fields.hpp"
#include "json.hpp"

namespace adaptmhd {

// A named set of fields on one grid, stored on disk as a directory holding
// manifest.json plus one raw little-endian f64 file per entry. Arrays are
// row-major in (zeta, theta, phi); components are concatenated in the order
// documented on each field type.
class FieldBundle {
 public:
  using Value = std::variant<ScalarField, VectorField, KForm, MetricField>;
  struct Entry {
    std::string name;
    Value value;
  };

  FieldBundle() = default;
  explicit FieldBundle(const Grid3& grid) : grid_(grid) {}

  const Grid3& grid() const { return grid_; }
  const std::vector<Entry>& entries() const { return entries_; }

  // Replaces an entry of the same name. Throws ShapeError on grid mismatch.
  void put(const std::string& name, Value value);
  bool contains(const std::string& name) const;

  template <class T>
  const T* find(const std::string& name) const {
    for (const auto& e : entries_) {
      if (e.name == name) return std::get_if<T>(&e.value);
    }
    return nullptr;
  }
  // Throws FormatError when the entry is missing or of another kind.
  template <class T>
  const T& get(const std::string& name) const {
    if (const T* p = find<T>(name)) return *p;
    throw_missing(name);
  }

 private:
  [[noreturn]] static void throw_missing(const std::string& name);
  Grid3 grid_;
  std::vector<Entry> entries_;
};

inline constexpr int kArchiveFormatVersion = 1;

// Writes the archive atomically (temporary directory, then rename).
void write_archive(const std::filesystem::path& dir, const FieldBundle& bundle);

// Throws FormatError for a malformed manifest and ShapeError when an array
// does not match the grid or the declared component count.
FieldBundle read_archive(const std::filesystem::path& dir);

// Writes text through a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& text);
void write_json_atomic(const std::filesystem::path& path, const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

}  // namespace adaptmhd
