#include "supra/io.hpp"

#include "supra/errors.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace supra::io {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
    std::string out;
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw validation_error(errc::bad_config, "csv_table: row width differs from header");
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_g17(row[i]);
        }
        out += '\n';
    }
    return out;
}

void write_text_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw validation_error(errc::bad_config, "cannot open output file " + tmp.string());
        f << content;
        f.flush();
        if (!f) throw validation_error(errc::bad_config, "write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw validation_error(errc::bad_config, "cannot move output into place at " + path);
    }
}

} // namespace supra::io
