#include "adaptmhd/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <random>
#include <sstream>

#include "adaptmhd/errors.hpp"

namespace adaptmhd {
namespace fs = std::filesystem;
using nlohmann::json;

static_assert(std::endian::native == std::endian::little,
              "archive I/O assumes a little-endian host");

namespace {

struct KindInfo {
  std::string kind;
  int degree;  // forms only, -1 otherwise
  std::vector<const Array*> arrays;
};

KindInfo describe(const FieldBundle::Value& v) {
  KindInfo k;
  k.degree = -1;
  if (const auto* s = std::get_if<ScalarField>(&v)) {
    k.kind = "scalar";
    k.arrays = {&s->values()};
  } else if (const auto* x = std::get_if<VectorField>(&v)) {
    k.kind = "vector";
    for (const auto& c : x->components()) k.arrays.push_back(&c);
  } else if (const auto* w = std::get_if<KForm>(&v)) {
    k.kind = "form";
    k.degree = w->degree();
    for (const auto& c : w->components()) k.arrays.push_back(&c);
  } else {
    const auto& g = std::get<MetricField>(v);
    k.kind = "metric";
    for (const auto& c : g.components()) k.arrays.push_back(&c);
  }
  return k;
}

const Grid3& grid_of(const FieldBundle::Value& v) {
  return std::visit([](const auto& f) -> const Grid3& { return f.grid(); }, v);
}

std::string unique_suffix() {
  std::random_device rd;
  std::ostringstream s;
  s << ".tmp-" << std::hex << rd() << rd();
  return s.str();
}

int expected_components(const std::string& kind, int degree) {
  if (kind == "scalar") return 1;
  if (kind == "vector") return 3;
  if (kind == "metric") return 6;
  if (kind == "form") {
    if (degree < 0 || degree > 3) {
      throw FormatError("form entry with invalid degree " + std::to_string(degree));
    }
    return KForm::component_count(degree);
  }
  throw FormatError("unknown entry kind '" + kind + "'");
}

template <class T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("manifest missing '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("manifest field '") + key + "': " + e.what());
  }
}

}  // namespace

void FieldBundle::put(const std::string& name, Value value) {
  if (!(grid_of(value) == grid_)) {
    throw ShapeError("entry '" + name + "' lives on a different grid");
  }
  for (auto& e : entries_) {
    if (e.name == name) {
      e.value = std::move(value);
      return;
    }
  }
  entries_.push_back({name, std::move(value)});
}

bool FieldBundle::contains(const std::string& name) const {
  for (const auto& e : entries_) {
    if (e.name == name) return true;
  }
  return false;
}

void FieldBundle::throw_missing(const std::string& name) {
  throw FormatError("archive has no entry '" + name + "' of the requested kind");
}

void write_file_atomic(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  const fs::path tmp = path.string() + unique_suffix();
  {
    std::ofstream out(tmp, std::ios::binary);
    out << text;
    if (!out) throw FormatError("cannot write " + tmp.string());
  }
  fs::rename(tmp, path);
}

void write_json_atomic(const fs::path& path, const json& j) {
  write_file_atomic(path, j.dump(2) + "\n");
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_archive(const fs::path& dir, const FieldBundle& bundle) {
  const fs::path tmp = dir.string() + unique_suffix();
  fs::create_directories(tmp);
  const Grid3& g = bundle.grid();
  json manifest;
  manifest["format_version"] = kArchiveFormatVersion;
  manifest["grid"] = {{"n", g.n()}, {"period", g.period()}};
  manifest["entries"] = json::array();
  for (const auto& e : bundle.entries()) {
    const KindInfo k = describe(e.value);
    const std::string file = e.name + ".f64";
    std::ofstream out(tmp / file, std::ios::binary);
    for (const Array* a : k.arrays) {
      out.write(reinterpret_cast<const char*>(a->data()),
                static_cast<std::streamsize>(a->size() * sizeof(double)));
    }
    if (!out) throw FormatError("cannot write " + (tmp / file).string());
    json entry = {{"name", e.name}, {"kind", k.kind}, {"dtype", "f64le"},
                  {"file", file}, {"components", k.arrays.size()}};
    if (k.degree >= 0) entry["degree"] = k.degree;
    manifest["entries"].push_back(entry);
  }
  {
    std::ofstream out(tmp / "manifest.json");
    out << manifest.dump(2) << "\n";
  }
  if (fs::exists(dir)) {
    // Keep side files (bundle.json, reports) written by callers next to it.
    for (const auto& item : fs::directory_iterator(dir)) {
      if (!fs::exists(tmp / item.path().filename())) {
        fs::rename(item.path(), tmp / item.path().filename());
      }
    }
    fs::remove_all(dir);
  }
  fs::rename(tmp, dir);
}

FieldBundle read_archive(const fs::path& dir) {
  const json m = read_json(dir / "manifest.json");
  if (!m.is_object()) throw FormatError("manifest is not a JSON object");
  const int version = field<int>(m, "format_version");
  if (version != kArchiveFormatVersion) {
    throw FormatError("unsupported archive format_version " + std::to_string(version));
  }
  const json& jg = m.contains("grid") ? m.at("grid") : throw FormatError("manifest missing 'grid'");
  const auto n = field<std::array<int, 3>>(jg, "n");
  const auto period = field<std::array<double, 3>>(jg, "period");
  Grid3 grid = [&] {
    try {
      return Grid3(n, period);
    } catch (const ParameterError& e) {
      throw FormatError(std::string("manifest grid: ") + e.what());
    }
  }();
  FieldBundle bundle(grid);
  if (!m.contains("entries") || !m.at("entries").is_array()) {
    throw FormatError("manifest missing 'entries' list");
  }
  const std::size_t nodes = grid.size();
  for (const json& e : m.at("entries")) {
    const auto name = field<std::string>(e, "name");
    const auto kind = field<std::string>(e, "kind");
    const int degree = kind == "form" ? field<int>(e, "degree") : -1;
    if (field<std::string>(e, "dtype") != "f64le") {
      throw FormatError("entry '" + name + "': only dtype f64le is supported");
    }
    const int ncomp = expected_components(kind, degree);
    if (e.contains("components") && e.at("components").get<int>() != ncomp) {
      throw ShapeError("entry '" + name + "': " + kind + " needs " +
                       std::to_string(ncomp) + " component arrays, manifest lists " +
                       std::to_string(e.at("components").get<int>()));
    }
    const fs::path file = dir / field<std::string>(e, "file");
    if (!fs::exists(file)) throw FormatError("missing array file " + file.string());
    const auto bytes = fs::file_size(file);
    if (bytes != ncomp * nodes * sizeof(double)) {
      throw ShapeError("entry '" + name + "': file has " + std::to_string(bytes) +
                       " bytes, expected " + std::to_string(ncomp * nodes * 8));
    }
    std::ifstream in(file, std::ios::binary);
    std::vector<Array> comps(ncomp, Array(nodes));
    for (auto& c : comps) {
      in.read(reinterpret_cast<char*>(c.data()),
              static_cast<std::streamsize>(nodes * sizeof(double)));
    }
    if (!in) throw FormatError("short read on " + file.string());
    if (kind == "scalar") {
      bundle.put(name, ScalarField(grid, std::move(comps[0])));
    } else if (kind == "vector") {
      bundle.put(name, VectorField(grid, {std::move(comps[0]), std::move(comps[1]),
                                          std::move(comps[2])}));
    } else if (kind == "form") {
      bundle.put(name, KForm(grid, degree, std::move(comps)));
    } else {
      std::array<Array, 6> g6;
      for (int c = 0; c < 6; ++c) g6[c] = std::move(comps[c]);
      bundle.put(name, MetricField(grid, std::move(g6)));
    }
  }
  return bundle;
}

}  // namespace adaptmhd
