#include "epsball/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "epsball/errors.hpp"

namespace epsball {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(trim(cur));
    return out;
}

bool parse_double(const std::string& field, double& out) {
    if (field.empty()) return false;
    const char* first = field.data();
    const char* last = field.data() + field.size();
    if (*first == '+') ++first; // from_chars rejects an explicit plus
    if (first == last) return false;
    auto [ptr, ec] = std::from_chars(first, last, out, std::chars_format::general);
    return ec == std::errc{} && ptr == last;
}

bool is_numeric(const std::string& field) {
    double v;
    return parse_double(field, v);
}

std::vector<std::string> read_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!trim(line).empty()) lines.push_back(line);
    }
    if (in.bad()) throw io_error("stream read failure");
    return lines;
}

} // namespace

label_selector label_selector::parse(const std::string& spec) {
    if (spec.empty()) return last();
    if (spec.find_first_not_of("0123456789") == std::string::npos) {
        std::size_t idx = 0;
        auto [ptr, ec] = std::from_chars(spec.data(), spec.data() + spec.size(), idx);
        if (ec == std::errc{} && ptr == spec.data() + spec.size()) return by_index(idx);
    }
    return by_name(spec);
}

dataset load_csv(std::istream& in, const label_selector& label) {
    const auto lines = read_lines(in);
    if (lines.empty()) throw validation_error("empty input");

    const auto first = split_fields(lines[0]);
    const std::size_t ncols = first.size();
    if (ncols < 2) throw validation_error("rows need at least one feature column plus a label");

    std::size_t label_col;
    bool header;
    if (label.name) {
        // A by-name selector implies a header row.
        auto it = std::find(first.begin(), first.end(), *label.name);
        if (it == first.end())
            throw validation_error("label column '" + *label.name + "' not found in header");
        label_col = static_cast<std::size_t>(it - first.begin());
        header = true;
    } else {
        label_col = label.index ? *label.index : ncols - 1;
        if (label_col >= ncols) {
            std::ostringstream msg;
            msg << "label column index " << label_col << " out of range (row has "
                << ncols << " fields)";
            throw validation_error(msg.str());
        }
        // Header iff any non-label field of the first row is non-numeric.
        header = false;
        for (std::size_t k = 0; k < ncols; ++k)
            if (k != label_col && !is_numeric(first[k])) header = true;
    }

    const std::size_t start = header ? 1 : 0;
    if (start >= lines.size()) throw validation_error("no data rows after the header");

    std::vector<labeled_point> points;
    points.reserve(lines.size() - start);
    for (std::size_t r = start; r < lines.size(); ++r) {
        const auto fields = split_fields(lines[r]);
        const std::size_t row = r - start + 1; // 1-based data row
        if (fields.size() != ncols) {
            std::ostringstream msg;
            msg << "row " << row << " has " << fields.size() << " fields, expected " << ncols;
            throw validation_error(msg.str());
        }
        labeled_point p;
        p.coords.reserve(ncols - 1);
        for (std::size_t k = 0; k < ncols; ++k) {
            if (k == label_col) continue;
            double v;
            if (!parse_double(fields[k], v)) {
                std::ostringstream msg;
                msg << "non-numeric feature '" << fields[k] << "' at row " << row
                    << ", column " << k;
                throw validation_error(msg.str());
            }
            p.coords.push_back(v);
        }
        if (fields[label_col].empty()) {
            std::ostringstream msg;
            msg << "empty label at row " << row;
            throw validation_error(msg.str());
        }
        p.class_id = fields[label_col];
        points.push_back(std::move(p));
    }
    return dataset::from_points(std::move(points));
}

dataset load_json(std::istream& in) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_array()) throw validation_error("JSON input must be an array of objects");
    if (doc.empty()) throw validation_error("empty input");

    std::vector<labeled_point> points;
    points.reserve(doc.size());
    std::size_t row = 0;
    for (const auto& item : doc) {
        ++row;
        std::ostringstream where;
        where << "JSON element " << row;
        if (!item.is_object() || !item.contains("x") || !item.contains("class"))
            throw validation_error(where.str() + " must be {\"x\": [...], \"class\": ...}");
        const auto& xs = item["x"];
        if (!xs.is_array() || xs.empty())
            throw validation_error(where.str() + ": \"x\" must be a non-empty array of numbers");
        labeled_point p;
        p.coords.reserve(xs.size());
        for (const auto& v : xs) {
            if (!v.is_number())
                throw validation_error(where.str() + ": non-numeric entry in \"x\"");
            p.coords.push_back(v.get<double>());
        }
        const auto& cls = item["class"];
        if (cls.is_string())
            p.class_id = cls.get<std::string>();
        else if (cls.is_number())
            p.class_id = cls.dump();
        else
            throw validation_error(where.str() + ": \"class\" must be a string or number");
        points.push_back(std::move(p));
    }
    return dataset::from_points(std::move(points));
}

dataset load_dataset_file(const std::string& path, const label_selector& label) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open input file: " + path);
    const auto& p = path;
    const bool json = p.size() >= 5 && p.compare(p.size() - 5, 5, ".json") == 0;
    return json ? load_json(in) : load_csv(in, label);
}

void save_csv(const dataset& ds, const std::string& path) {
    std::ostringstream out;
    for (const auto& p : ds.points()) {
        if (p.class_id.find_first_of(",\n\r") != std::string::npos)
            throw validation_error("class id '" + p.class_id + "' cannot be written to CSV");
        for (double c : p.coords) out << fmt17(c) << ',';
        out << p.class_id << '\n';
    }
    write_text_atomic(path, out.str());
}

std::vector<std::vector<double>> load_points_csv(std::istream& in) {
    const auto lines = read_lines(in);
    if (lines.empty()) throw validation_error("empty query input");

    const auto first = split_fields(lines[0]);
    bool header = false;
    for (const auto& f : first)
        if (!is_numeric(f)) header = true;

    const std::size_t start = header ? 1 : 0;
    if (start >= lines.size()) throw validation_error("no query rows after the header");

    std::vector<std::vector<double>> rows;
    for (std::size_t r = start; r < lines.size(); ++r) {
        const auto fields = split_fields(lines[r]);
        std::vector<double> coords;
        coords.reserve(fields.size());
        for (const auto& f : fields) {
            double v;
            if (!parse_double(f, v)) {
                std::ostringstream msg;
                msg << "non-numeric query value '" << f << "' at row " << (r - start + 1);
                throw validation_error(msg.str());
            }
            coords.push_back(v);
        }
        if (!rows.empty() && coords.size() != rows[0].size()) {
            std::ostringstream msg;
            msg << "query row " << (r - start + 1) << " has " << coords.size()
                << " fields, expected " << rows[0].size();
            throw validation_error(msg.str());
        }
        rows.push_back(std::move(coords));
    }
    return rows;
}

std::vector<std::vector<double>> load_points_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open query file: " + path);
    return load_points_csv(in);
}

std::vector<radii_row> load_radii_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open radii file: " + path);
    const auto lines = read_lines(in);
    if (lines.size() < 2) throw validation_error("radii file has no data rows: " + path);

    const auto header = split_fields(lines[0]);
    if (header.size() < 5 || header[0] != "index")
        throw validation_error("unrecognized radii file header in " + path);
    const bool has_oracle = header.size() > 5 && header[5] == "oracle_epsilon";

    std::vector<radii_row> rows;
    rows.reserve(lines.size() - 1);
    for (std::size_t r = 1; r < lines.size(); ++r) {
        const auto f = split_fields(lines[r]);
        if (f.size() < 5)
            throw validation_error("short row in radii file at line " + std::to_string(r + 1));
        radii_row row;
        double idx;
        if (!parse_double(f[0], idx) || idx < 0)
            throw validation_error("bad index in radii file at line " + std::to_string(r + 1));
        row.index = static_cast<std::size_t>(idx);
        row.class_id = f[1];
        if (!parse_double(f[2], row.epsilon) || !parse_double(f[3], row.density))
            throw validation_error("bad numeric field in radii file at line " +
                                   std::to_string(r + 1));
        row.stop_reason = f[4];
        if (has_oracle && f.size() > 5) {
            double oe;
            if (!parse_double(f[5], oe))
                throw validation_error("bad oracle field in radii file at line " +
                                       std::to_string(r + 1));
            row.oracle_epsilon = oe;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    std::random_device rd;
    std::ostringstream tmp_name;
    tmp_name << path << ".tmp" << std::hex << rd();
    const std::string tmp = tmp_name.str();

    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot open output file for writing: " + path);
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            std::filesystem::remove(tmp, ec);
            throw io_error("write failure on output file: " + path);
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ec2;
        std::filesystem::remove(tmp, ec2);
        throw io_error("cannot finalize output file " + path + ": " + ec.message());
    }
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw io_error("read failure on file: " + path);
    return buf.str();
}

} // namespace epsball
