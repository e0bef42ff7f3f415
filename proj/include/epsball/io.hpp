#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "epsball/dataset.hpp"

namespace epsball {

// Column carrying the class label: a 0-based index, a header name, or
// (default) the last column of each row.
struct label_selector {
    static label_selector last() { return {}; }
    static label_selector by_index(std::size_t i) { return {i, {}}; }
    static label_selector by_name(std::string n) { return {{}, std::move(n)}; }
    // Parses a CLI-style spec: all-digits means index, otherwise name.
    static label_selector parse(const std::string& spec);

    std::optional<std::size_t> index;
    std::optional<std::string> name;
};

// CSV ingest. A header row is assumed present iff the first row has any
// non-numeric field besides the label column (a by-name selector always
// requires one). Throws validation_error for malformed content and
// io_error for stream-level failures.
dataset load_csv(std::istream& in, const label_selector& label = label_selector::last());

// JSON ingest: array of objects {"x": [numbers], "class": string}.
dataset load_json(std::istream& in);

// Dispatches on the file extension: ".json" is JSON, anything else CSV.
dataset load_dataset_file(const std::string& path,
                          const label_selector& label = label_selector::last());

// Headerless CSV emit, label last, coordinates at 17 significant digits so
// load(save(ds)) round-trips exactly.
void save_csv(const dataset& ds, const std::string& path);

// Unlabeled query points, one CSV row per point. A header row is assumed
// iff the first row has any non-numeric field.
std::vector<std::vector<double>> load_points_csv(std::istream& in);
std::vector<std::vector<double>> load_points_file(const std::string& path);

// Radii table written by `compute` and read back by verify/sample/plot:
// columns index,class_id,epsilon,density,stop_reason (header included).
struct radii_row {
    std::size_t index;
    std::string class_id;
    double epsilon;
    double density;
    std::string stop_reason;
    std::optional<double> oracle_epsilon;
};

std::vector<radii_row> load_radii_file(const std::string& path);

// Shortest decimal form that round-trips the double (printf %.17g).
std::string fmt17(double v);

// Writes content to a sibling temp file, then renames over path. Either
// the old file or the complete new file is visible, never a partial one.
void write_text_atomic(const std::string& path, const std::string& content);

std::string read_text_file(const std::string& path);

} // namespace epsball
