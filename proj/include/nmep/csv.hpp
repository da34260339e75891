#pragma once

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace nmep {

// 17 significant digits round-trips every 64-bit float exactly.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string format_int(long long v) { return std::to_string(v); }

// Deterministic CSV output: mandatory header, LF line endings, binary stream
// so the bytes are identical on every platform.
class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header)
        : out_(path, std::ios::binary) {
        if (!out_) throw std::runtime_error("cannot open output file: " + path);
        write_cells(header);
    }

    void row(const std::vector<std::string>& cells) { write_cells(cells); }

    void close() { out_.close(); }

private:
    void write_cells(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out_ << ',';
            out_ << cells[i];
        }
        out_ << '\n';
    }

    std::ofstream out_;
};

} // namespace nmep
