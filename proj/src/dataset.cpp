#include "aoi/dataset.hpp"

#include <algorithm>

#include <json.hpp>

#include "aoi/csv.hpp"
#include "aoi/error.hpp"

namespace aoi {

namespace fs = std::filesystem;

namespace {

struct ManifestEntry {
  std::string file;
  std::string table;
};

struct Manifest {
  std::optional<std::string> fact;
  std::map<std::string, ManifestEntry, CaseInsensitiveLess> hierarchies;
};

Manifest read_manifest(const fs::path &path) {
  Manifest m;
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(csv::read_file(path.string()));
  } catch (const nlohmann::json::exception &e) {
    throw LoadError(path.string() + ": " + e.what());
  }
  auto where = [&](const std::string &field) { return path.string() + ": field '" + field + "'"; };
  if (!doc.is_object()) throw LoadError(path.string() + ": manifest must be a JSON object");
  for (const auto &[key, value] : doc.items()) {
    if (key == "fact") {
      if (!value.is_string()) throw LoadError(where("fact") + " must be a string");
      m.fact = value.get<std::string>();
    } else if (key == "hierarchies") {
      if (!value.is_object()) throw LoadError(where("hierarchies") + " must be an object");
      for (const auto &[attr, entry] : value.items()) {
        ManifestEntry e;
        if (entry.is_string()) {
          e.file = entry.get<std::string>();
        } else if (entry.is_object()) {
          for (const auto &[k, v] : entry.items()) {
            if (!v.is_string()) throw LoadError(where("hierarchies." + attr + "." + k) + " must be a string");
            if (k == "file") {
              e.file = v.get<std::string>();
            } else if (k == "table") {
              e.table = v.get<std::string>();
            } else {
              throw LoadError(where("hierarchies." + attr + "." + k) + " is not recognized");
            }
          }
        } else {
          throw LoadError(where("hierarchies." + attr) + " must be a file name or an object");
        }
        m.hierarchies[attr] = e;
      }
    } else {
      throw LoadError(where(key) + " is not recognized");
    }
  }
  return m;
}

bool numeric_header(const std::vector<std::string> &header) {
  auto ends = [](const std::string &s, std::string_view suffix) {
    std::string t = fold(s);
    return t.size() >= suffix.size() && t.compare(t.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  return header.size() >= 3 && ends(header[0], "_start") && ends(header[1], "_fin");
}

std::string default_file(std::string_view attr) { return "hierarchy_" + fold(attr) + ".csv"; }

}  // namespace

Dataset load_dataset(const fs::path &dir, const DatasetOptions &options) {
  if (!fs::is_directory(dir)) throw LoadError("data directory not found: " + dir.string());
  Dataset data;
  data.dir = dir;

  Manifest manifest;
  if (options.manifest) {
    manifest = read_manifest(*options.manifest);
  } else if (fs::exists(dir / "manifest.json")) {
    manifest = read_manifest(dir / "manifest.json");
  }
  if (manifest.fact) {
    data.fact = *manifest.fact;
  } else if (options.fact) {
    data.fact = *options.fact;
  } else {
    throw LoadError(dir.string() + ": no fact table named (add a manifest or pass a task)");
  }

  const fs::path fact_path = dir / (data.fact + ".csv");
  Relation fact = load_relation(csv::read_file(fact_path.string()), fact_path.string());

  for (const auto &[attr, entry] : manifest.hierarchies) {
    if (!fact.schema().find(attr)) {
      throw LoadError("manifest names hierarchy for " + attr + ", which is not an attribute of " + data.fact);
    }
  }

  for (const auto &spec : fact.schema().attributes()) {
    auto it = manifest.hierarchies.find(spec.name);
    fs::path file = dir / (it != manifest.hierarchies.end() && !it->second.file.empty() ? it->second.file
                                                                                        : default_file(spec.name));
    data.hierarchy_files[spec.name] = file;
    if (!fs::exists(file)) continue;

    std::string text = csv::read_file(file.string());
    auto records = csv::parse(text);
    const bool numeric = !records.empty() && numeric_header(records.front());
    ConceptTree tree = numeric ? load_numeric_tree(text, spec.name) : load_categorical_tree(text, spec.name);
    if (it != manifest.hierarchies.end() && !it->second.table.empty()) tree.set_table_name(it->second.table);

    KindOverrides kinds;
    for (std::size_t c = 0; c < records.front().size(); ++c) {
      kinds[trim(records.front()[c])] = numeric && c < 2 ? AttributeKind::numeric : AttributeKind::categorical;
    }
    data.db.add(tree.table_name(), load_relation(text, file.string(), kinds));
    data.trees.add(std::move(tree));
  }
  data.db.add(data.fact, std::move(fact));
  return data;
}

Database load_tables(const fs::path &dir, const DatasetOptions &options) {
  if (!fs::is_directory(dir)) throw LoadError("data directory not found: " + dir.string());
  Database db;
  std::vector<fs::path> used;
  const bool fact_known = options.fact || (options.manifest ? true : fs::exists(dir / "manifest.json"));
  if (fact_known) {
    Dataset data = load_dataset(dir, options);
    used.push_back(fs::weakly_canonical(dir / (data.fact + ".csv")));
    for (const auto &[attr, file] : data.hierarchy_files) used.push_back(fs::weakly_canonical(file));
    db = std::move(data.db);
  }
  std::vector<fs::path> files;
  for (const auto &entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto &file : files) {
    if (std::find(used.begin(), used.end(), fs::weakly_canonical(file)) != used.end()) continue;
    std::string name = file.stem().string();
    if (db.contains(name)) continue;
    db.add(name, load_relation(csv::read_file(file.string()), file.string()));
  }
  return db;
}

void require_hierarchies(const Dataset &data, const LearningTask &task) {
  auto expected = [&](const std::string &attr) {
    auto it = data.hierarchy_files.find(attr);
    return it != data.hierarchy_files.end() ? it->second.filename().string() : default_file(attr);
  };
  if (!data.trees.contains(task.target.attribute)) {
    throw LoadError("missing hierarchy file " + expected(task.target.attribute) + " for target attribute " +
                    task.target.attribute);
  }
  for (const auto &[attr, level] : task.levels) {
    if (data.trees.contains(attr) || iequals(level, kAny) || iequals(level, attr)) continue;
    throw LoadError("missing hierarchy file " + expected(attr) + " for attribute " + attr + " at level " + level);
  }
}

}  // namespace aoi
