#include "occ/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "occ/errors.hpp"

namespace occ {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::config, "cannot write file: " + path);
    out << text;
}

void write_bits(const std::string& path, const Bits& bits) {
    std::string line;
    line.reserve(bits.size() + 1);
    for (auto b : bits) line.push_back(b ? '1' : '0');
    line.push_back('\n');
    write_text(path, line);
}

Bits parse_bits(const std::string& text) {
    Bits bits;
    for (char c : text) {
        if (c == '0') bits.push_back(0);
        else if (c == '1') bits.push_back(1);
        else if (c == '\n' || c == '\r' || c == ' ' || c == '\t') continue;
        else throw Error(ErrorKind::config, std::string("invalid bit character: ") + c);
    }
    return bits;
}

Bits read_bits(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::config, "cannot open bit file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_bits(buffer.str());
}

void write_column(const std::string& path, const GrayColumn& col) {
    std::string text;
    for (double v : col.values) {
        text += format_double(v);
        text.push_back('\n');
    }
    write_text(path, text);
}

GrayColumn read_column(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::config, "cannot open column file: " + path);
    GrayColumn col;
    double v;
    while (in >> v) col.values.push_back(v);
    if (col.values.empty())
        throw Error(ErrorKind::config, "column file is empty: " + path);
    return col;
}

void write_frame(const std::string& path, const Frame& frame, int maxval) {
    if (frame.columns.empty())
        throw Error(ErrorKind::invalid_argument, "cannot write an empty frame");
    const std::size_t rows = frame.rows();
    const std::size_t cols = frame.width();
    for (const auto& c : frame.columns)
        if (c.size() != rows)
            throw Error(ErrorKind::invalid_argument, "ragged frame");

    std::string text = std::to_string(rows) + " " + std::to_string(cols) + " " +
                       std::to_string(maxval) + "\n";
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            const long q = std::lround(frame.columns[c].values[r] * maxval);
            if (c) text.push_back(' ');
            text += std::to_string(q);
        }
        text.push_back('\n');
    }
    write_text(path, text);
}

Frame read_frame(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::config, "cannot open frame file: " + path);
    std::size_t rows = 0, cols = 0;
    long maxval = 0;
    if (!(in >> rows >> cols >> maxval) || rows == 0 || cols == 0 || maxval < 1)
        throw Error(ErrorKind::config, "bad frame header in " + path);

    Frame frame;
    frame.columns.resize(cols);
    for (auto& c : frame.columns) c.values.resize(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            long q;
            if (!(in >> q))
                throw Error(ErrorKind::config, "truncated frame file: " + path);
            frame.columns[c].values[r] =
                static_cast<double>(q) / static_cast<double>(maxval);
        }
    }
    return frame;
}

std::string level_table_csv(const LevelTable& table) {
    std::string text = "symbol,level\n";
    for (std::size_t i = 0; i < table.levels.size(); ++i)
        text += std::to_string(i) + "," + format_double(table.levels[i]) + "\n";
    return text;
}

std::string threshold_set_csv(const ThresholdSet& set) {
    std::string text = "row";
    for (std::size_t c = 0; c < set.curves.size(); ++c) text += ",th" + std::to_string(c);
    text.push_back('\n');
    for (std::size_t r = 0; r < set.length; ++r) {
        text += std::to_string(r);
        for (const auto& curve : set.curves) {
            text.push_back(',');
            text += format_double(curve.values[r]);
        }
        text.push_back('\n');
    }
    return text;
}

std::string sample_plan_csv(const SamplePlan& plan) {
    std::string text = "position,gray,segment,k,ratio\n";
    for (std::size_t i = 0; i < plan.positions.size(); ++i) {
        const int seg = i < plan.sample_segment.size() ? plan.sample_segment[i] : -1;
        std::string k = "";
        std::string ratio = "";
        if (seg >= 0 && static_cast<std::size_t>(seg) < plan.segments.size()) {
            k = std::to_string(plan.segments[static_cast<std::size_t>(seg)].stride_count);
            ratio = format_double(plan.segments[static_cast<std::size_t>(seg)].ratio);
        }
        text += std::to_string(plan.positions[i]) + "," + format_double(plan.values[i]) + "," +
                std::to_string(seg) + "," + k + "," + ratio + "\n";
    }
    return text;
}

}  // namespace occ
