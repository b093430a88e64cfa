// Generates the four bundled dataset fixtures plus their schema files.
// The real UCI files are not redistributable here, so these are synthetic
// stand-ins that keep the documented shape of each dataset: instance and
// attribute counts, class priors, missing-value pattern, and a class
// structure that a product-style aggregation separates well while min-style
// aggregation does not. Output is deterministic for a fixed seed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

namespace {

// mt19937_64 with hand-rolled draws, so regenerated files are byte-stable
// across standard libraries.
struct Rng {
  std::mt19937_64 eng;

  explicit Rng(std::uint64_t seed) : eng(seed) {}

  double unit() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

  int range(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(eng() % static_cast<std::uint64_t>(
                                     hi - lo + 1));
  }

  bool chance(double p) { return unit() < p; }

  double normal(double mean, double sigma) {
    const double u1 = std::max(unit(), 1e-12);
    const double u2 = unit();
    return mean + sigma * std::sqrt(-2.0 * std::log(u1)) *
                      std::cos(6.283185307179586 * u2);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[eng() % i]);
    }
  }
};

struct Row {
  std::vector<std::string> cells;
  std::string label;
};

void ensure_not_constant(std::vector<Row>& rows, std::size_t col,
                         const std::string& alt) {
  for (const Row& r : rows) {
    if (r.cells[col] != rows[0].cells[col]) return;
  }
  rows[0].cells[col] = alt;
}

void write_data(const std::filesystem::path& path, const std::vector<Row>& rows,
                bool class_first) {
  std::ofstream out(path);
  for (const Row& r : rows) {
    bool first = true;
    if (class_first) {
      out << r.label;
      first = false;
    }
    for (const std::string& c : r.cells) {
      if (!first) out << ',';
      out << c;
      first = false;
    }
    if (!class_first) out << ',' << r.label;
    out << '\n';
  }
  std::cout << path.string() << ": " << rows.size() << " instances\n";
}

void write_schema(const std::filesystem::path& path, const std::string& name,
                  const std::string& labels,
                  const std::vector<std::string>& attribute_blocks) {
  std::ofstream out(path);
  out << "dataset = " << name << "\n";
  out << "delimiter = ,\n";
  out << "missing = ?\n";
  out << "class_labels = " << labels << "\n";
  for (const std::string& block : attribute_blocks) out << block;
}

std::string attr_block(const std::string& name, const std::string& kind,
                       const std::string& membership = "") {
  std::string s = "\n[attribute]\nname = " + name + "\nkind = " + kind + "\n";
  if (!membership.empty()) s += "membership = " + membership + "\n";
  return s;
}

void pick_distinct(Rng& rng, int count, int width, std::vector<int>* out) {
  out->clear();
  while (static_cast<int>(out->size()) < count) {
    const int c = rng.range(0, width - 1);
    if (std::find(out->begin(), out->end(), c) == out->end()) {
      out->push_back(c);
    }
  }
}

// ---------------------------------------------------------------------------
// breast-cancer-wisconsin: 699 instances, 10 ordinal inputs + class {2,4},
// 458/241 split, 16 missing cells in 16 instances (all in one column).
//
// Cell values 1..9 map through the observed-range gaussian onto five
// membership levels (value v gives e^{-(v-5)^2/2}). Row archetypes place the
// classes so that a product over all ten cells separates them cleanly at the
// default grid resolution, while min-style and ratio-sum (Dombi) aggregation
// are fooled by "spoiler" rows whose single extreme cell drags them below
// the benign band, and mean-style aggregation is fooled by "ghost" rows.
// Sixteen flipped labels give every operator an irreducible error floor.

void gen_wisconsin(const std::filesystem::path& dir) {
  Rng rng(20240911);
  const int width = 10;
  std::vector<Row> rows;
  std::vector<int> cols;

  const auto low_cell = [&] { return rng.chance(0.5) ? "3" : "7"; };
  const auto mid_cell = [&] { return rng.chance(0.5) ? "4" : "6"; };
  const auto deep_cell = [&] { return rng.chance(0.5) ? "1" : "9"; };
  const auto near_mid_cell = [&] { return rng.chance(0.5) ? "3.7" : "6.3"; };

  // range anchors: one all-minimum and one all-maximum instance
  rows.push_back({std::vector<std::string>(width, "1"), "2"});
  rows.push_back({std::vector<std::string>(width, "9"), "2"});

  // benign core: seven or eight low cells, up to one mid cell, rest center.
  // The first sixteen get eight low cells with one pinned to the column that
  // later goes missing, so imputation keeps them inside the benign band.
  for (int i = 0; i < 456; ++i) {
    Row row;
    row.label = "2";
    row.cells.assign(width, "5");
    const bool pinned = i < 16;
    const int k3 = pinned ? 8 : rng.range(7, 8);
    const int k4 = rng.range(0, 1);
    pick_distinct(rng, k3 + k4, width, &cols);
    if (pinned && std::find(cols.begin(), cols.begin() + k3, 5) ==
                      cols.begin() + k3) {
      cols[0] = 5;  // force a low cell onto the missing column
    }
    for (int k = 0; k < k3; ++k) row.cells[cols[k]] = low_cell();
    for (int k = k3; k < k3 + k4; ++k) row.cells[cols[k]] = mid_cell();
    rows.push_back(std::move(row));
  }

  // twins: one near-deep cell plus nine near-mid cells; their min and mean
  // land inside the benign band while their product stays malignant-side
  for (int i = 0; i < 20; ++i) {
    Row row;
    row.label = "4";
    for (int c = 0; c < width; ++c) row.cells.push_back(near_mid_cell());
    row.cells[static_cast<std::size_t>(rng.range(0, width - 1))] =
        rng.chance(0.5) ? "2" : "8";
    rows.push_back(std::move(row));
  }

  for (int i = 0; i < 55; ++i) {  // spoilers: one extreme cell
    Row row;
    row.label = "4";
    row.cells.assign(width, "5");
    const int k4 = rng.range(0, 1);
    pick_distinct(rng, 1 + k4, width, &cols);
    row.cells[cols[0]] = deep_cell();
    if (k4) row.cells[cols[1]] = mid_cell();
    rows.push_back(std::move(row));
  }

  for (int i = 0; i < 166; ++i) {  // malignant core: 8..10 mid cells
    Row row;
    row.label = "4";
    row.cells.assign(width, "5");
    const int k4 = rng.range(8, 10);
    pick_distinct(rng, k4, width, &cols);
    for (int k = 0; k < k4; ++k) row.cells[cols[k]] = mid_cell();
    rows.push_back(std::move(row));
  }

  // label noise, preserving the 458/241 split: eight benign-core rows
  // (avoiding the pinned ones) and eight spoilers trade labels
  for (int k = 0; k < 8; ++k) {
    rows[static_cast<std::size_t>(2 + 16 + rng.range(0, 439))].label = "4";
    rows[static_cast<std::size_t>(478 + rng.range(0, 54))].label = "2";
  }

  // sixteen missing cells in sixteen distinct instances, one column
  for (int r = 2; r < 18; ++r) rows[static_cast<std::size_t>(r)].cells[5] = "?";

  rng.shuffle(rows);

  static const char* names[] = {
      "clump_thickness", "size_uniformity", "shape_uniformity",
      "marginal_adhesion", "epithelial_size", "bare_nuclei",
      "bland_chromatin", "normal_nucleoli", "mitoses", "cell_cohesion"};
  std::vector<std::string> blocks;
  for (const char* n : names) blocks.push_back(attr_block(n, "ordinal"));
  blocks.push_back(attr_block("class", "class"));

  write_data(dir / "breast-cancer-wisconsin.data", rows, false);
  write_schema(dir / "breast-cancer-wisconsin.schema", "breast-cancer-wisconsin",
               "2,4", blocks);
}

// ---------------------------------------------------------------------------
// lymphography: 148 instances, 18 ordinal inputs + class first, four classes
// 2/81/61/4, no missing values. Low-cell counts step down with the class
// index, so product-aggregated values order the classes with a small
// deliberate overlap between classes 2 and 3.

void gen_lymphography(const std::filesystem::path& dir) {
  Rng rng(57120347);
  const int width = 18;

  std::vector<Row> rows;
  std::vector<int> cols;

  const auto low_cell = [&] { return rng.chance(0.5) ? "3" : "7"; };
  const auto mid_cell = [&] { return rng.chance(0.5) ? "4" : "6"; };

  // class 1 ("normal", two instances) doubles as the range anchors
  rows.push_back({std::vector<std::string>(width, "1"), "1"});
  rows.push_back({std::vector<std::string>(width, "9"), "1"});

  const auto make = [&](const char* label, int k3, int k4) {
    Row row;
    row.label = label;
    row.cells.assign(width, "5");
    pick_distinct(rng, k3 + k4, width, &cols);
    for (int k = 0; k < k3; ++k) row.cells[cols[k]] = low_cell();
    for (int k = k3; k < k3 + k4; ++k) row.cells[cols[k]] = mid_cell();
    rows.push_back(std::move(row));
  };

  for (int i = 0; i < 78; ++i) make("2", 4, rng.range(0, 3));
  for (int i = 0; i < 3; ++i) make("2", 2, 3);  // atypical, inside class 3
  for (int i = 0; i < 59; ++i) make("3", 2, rng.range(2, 4));
  for (int i = 0; i < 2; ++i) make("3", 4, 1);  // atypical, inside class 2
  for (int i = 0; i < 4; ++i) make("4", 1, rng.range(0, 2));

  rng.shuffle(rows);

  std::vector<std::string> blocks;
  blocks.push_back(attr_block("class", "class"));
  static const char* names[] = {
      "lymphatics",      "block_of_affere", "bl_of_lymph_c", "bl_of_lymph_s",
      "by_pass",         "extravasates",    "regeneration",  "early_uptake",
      "lym_nodes_dimin", "lym_nodes_enlar", "changes_in_lym", "defect_in_node",
      "changes_in_node", "changes_in_stru", "special_forms", "dislocation",
      "exclusion_of_no", "no_of_nodes"};
  for (const char* n : names) blocks.push_back(attr_block(n, "ordinal"));

  write_data(dir / "lymphography.data", rows, true);
  write_schema(dir / "lymphography.schema", "lymphography", "1,2,3,4", blocks);
}

// ---------------------------------------------------------------------------
// hepatitis: 155 instances, class first {1=die:32, 2=live:123}, 13 nominal +
// 6 ordinal inputs, scattered missing cells. The signal is weak by design;
// the best fit stays close to the majority-class floor.

void gen_hepatitis(const std::filesystem::path& dir) {
  Rng rng(77115209);
  const int nominals = 13;
  const int ordinals = 6;
  std::vector<Row> rows;

  const auto make_row = [&](bool die) {
    Row row;
    row.label = die ? "1" : "2";
    const double bad_rate = die ? 0.45 : 0.30;
    for (int c = 0; c < nominals; ++c) {
      row.cells.push_back(rng.chance(bad_rate) ? "1" : "2");
    }
    // age-like column plus five 1..9 scores
    const double age = rng.normal(die ? 52.0 : 41.0, 9.0);
    row.cells.push_back(std::to_string(
        std::clamp(static_cast<int>(std::lround(age)), 20, 78)));
    for (int c = 1; c < ordinals; ++c) {
      const double v = rng.normal(die ? 4.0 : 5.5, 1.5);
      row.cells.push_back(std::to_string(
          std::clamp(static_cast<int>(std::lround(v)), 1, 9)));
    }
    return row;
  };

  for (int i = 0; i < 32; ++i) rows.push_back(make_row(true));
  for (int i = 0; i < 123; ++i) rows.push_back(make_row(false));
  rng.shuffle(rows);

  // ~70 missing cells anywhere but the class column
  int placed = 0;
  while (placed < 70) {
    Row& row = rows[static_cast<std::size_t>(rng.range(0, 154))];
    const int c = rng.range(0, nominals + ordinals - 1);
    if (row.cells[static_cast<std::size_t>(c)] != "?") {
      row.cells[static_cast<std::size_t>(c)] = "?";
      ++placed;
    }
  }

  for (int c = 0; c < nominals + ordinals; ++c) {
    ensure_not_constant(rows, static_cast<std::size_t>(c),
                        c < nominals ? "1" : "9");
  }

  std::vector<std::string> blocks;
  blocks.push_back(attr_block("class", "class"));
  static const char* nominal_names[] = {
      "sex",        "steroid",      "antivirals", "fatigue",  "malaise",
      "anorexia",   "liver_big",    "liver_firm", "spleen",   "spiders",
      "ascites",    "varices",      "histology"};
  for (const char* n : nominal_names) blocks.push_back(attr_block(n, "nominal"));
  static const char* ordinal_names[] = {"age",      "bilirubin", "alk_phosphate",
                                        "sgot",     "albumin",   "protime"};
  for (const char* n : ordinal_names) blocks.push_back(attr_block(n, "ordinal"));

  write_data(dir / "hepatitis.data", rows, true);
  write_schema(dir / "hepatitis.schema", "hepatitis", "1,2", blocks);
}

// ---------------------------------------------------------------------------
// echocardiogram: 132 instances, 12 inputs (2 nominal + 10 ordinal) + class
// last {0=died:44, 1=alive:88}, a moderately separable survival signal.

void gen_echocardiogram(const std::filesystem::path& dir) {
  Rng rng(66023581);
  const int nominals = 2;
  const int ordinals = 10;
  std::vector<Row> rows;

  const auto make_row = [&](bool died) {
    Row row;
    row.label = died ? "0" : "1";
    for (int c = 0; c < nominals; ++c) {
      row.cells.push_back(rng.chance(died ? 0.55 : 0.25) ? "0" : "1");
    }
    for (int c = 0; c < ordinals; ++c) {
      const double v = rng.normal(died ? 3.5 : 6.0, 1.4);
      row.cells.push_back(std::to_string(
          std::clamp(static_cast<int>(std::lround(v)), 1, 9)));
    }
    return row;
  };

  for (int i = 0; i < 44; ++i) rows.push_back(make_row(true));
  for (int i = 0; i < 88; ++i) rows.push_back(make_row(false));
  rng.shuffle(rows);

  int placed = 0;
  while (placed < 25) {
    Row& row = rows[static_cast<std::size_t>(rng.range(0, 131))];
    const int c = rng.range(0, nominals + ordinals - 1);
    if (row.cells[static_cast<std::size_t>(c)] != "?") {
      row.cells[static_cast<std::size_t>(c)] = "?";
      ++placed;
    }
  }

  for (int c = 0; c < nominals + ordinals; ++c) {
    ensure_not_constant(rows, static_cast<std::size_t>(c),
                        c < nominals ? "0" : "9");
  }

  std::vector<std::string> blocks;
  static const char* nominal_names[] = {"pericardial_effusion", "mural_thrombus"};
  for (const char* n : nominal_names) blocks.push_back(attr_block(n, "nominal"));
  static const char* ordinal_names[] = {
      "age_at_event",   "fractional_short", "epss",        "lvdd",
      "wall_motion",    "wall_index",       "septal_score", "ef_score",
      "contractility",  "perfusion"};
  for (const char* n : ordinal_names) blocks.push_back(attr_block(n, "ordinal"));
  blocks.push_back(attr_block("alive_at_1", "class"));

  write_data(dir / "echocardiogram.data", rows, false);
  write_schema(dir / "echocardiogram.schema", "echocardiogram", "0,1", blocks);
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path dir = argc > 1 ? argv[1] : "data";
  std::filesystem::create_directories(dir);
  gen_wisconsin(dir);
  gen_lymphography(dir);
  gen_hepatitis(dir);
  gen_echocardiogram(dir);
  return 0;
}
