#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

#include "iotrust/sim.hpp"

namespace iotrust {

// Shortest round-trippable decimal form, so emitted CSVs parse back to the
// exact same doubles and re-emission is byte-identical.
inline std::string format_double(double value) {
    char buf[32];
    const std::to_chars_result res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

namespace detail {

inline std::ofstream open_csv(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    return out;
}

inline void finish_csv(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out)
        throw std::runtime_error("write failed for " + path.string());
}

}  // namespace detail

// Writes domain_trust.csv, mae.csv, precision.csv and bench.csv into out_dir.
// Tables that the trace does not carry come out header-only.
inline void emit_trace(const SimulationTrace& trace, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec)
        throw std::runtime_error("cannot create directory " + out_dir.string() + ": " + ec.message());

    {
        const auto path = out_dir / "domain_trust.csv";
        std::ofstream out = detail::open_csv(path);
        out << "time_s,sp_id,domain_trust\n";
        for (const IterationRecord& rec : trace.iterations)
            out << rec.time_s << ',' << rec.sp << ',' << format_double(rec.domain_trust) << '\n';
        detail::finish_csv(out, path);
    }
    {
        const auto path = out_dir / "mae.csv";
        std::ofstream out = detail::open_csv(path);
        out << "block_start_s,malicious_fraction,mae\n";
        for (const MaeBlockRow& row : trace.mae_blocks)
            out << row.block_start_s << ',' << format_double(row.malicious_fraction) << ','
                << format_double(row.mae) << '\n';
        detail::finish_csv(out, path);
    }
    {
        const auto path = out_dir / "precision.csv";
        std::ofstream out = detail::open_csv(path);
        out << "iteration,dev_id,sp_id,pt\n";
        for (const PrecisionRecord& rec : trace.precision)
            out << rec.iteration << ',' << rec.device << ',' << rec.sp << ','
                << format_double(rec.value) << '\n';
        detail::finish_csv(out, path);
    }
    {
        const auto path = out_dir / "bench.csv";
        std::ofstream out = detail::open_csv(path);
        out << "n,kernel,median_us\n";
        for (const BenchRow& row : trace.bench)
            out << row.n << ',' << row.kernel << ',' << format_double(row.median_us) << '\n';
        detail::finish_csv(out, path);
    }
}

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

inline CsvTable load_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string() + " for reading");
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ','))
            fields.push_back(field);
        if (first) {
            table.header = std::move(fields);
            first = false;
        } else {
            table.rows.push_back(std::move(fields));
        }
    }
    return table;
}

inline double parse_double(const std::string& text) {
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw std::runtime_error("not a number: " + text);
    return value;
}

inline std::int64_t parse_int(const std::string& text) {
    std::int64_t value = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw std::runtime_error("not an integer: " + text);
    return value;
}

}  // namespace iotrust
