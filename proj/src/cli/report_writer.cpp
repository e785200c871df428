#include "cli/report_writer.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli/config.hpp"

namespace bsq::cli {

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string cell(const Json& v) {
    if (v.is_null()) return {};
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
    if (v.is_number()) return format_number(v.get<double>());
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    return v.dump();
}

void comment_block(std::ostringstream& os, const char* prefix, const Json& obj) {
    for (const auto& [k, v] : obj.items()) os << "# " << prefix << k << " = " << cell(v) << "\n";
}

Json keyed(const Json& columns, const Json& row) {
    Json obj = Json::object();
    for (std::size_t i = 0; i < columns.size() && i < row.size(); ++i)
        if (!row[i].is_null()) obj[columns[i].get<std::string>()] = row[i];
    return obj;
}

}  // namespace

std::string render_csv(const Json& doc) {
    std::ostringstream os;
    os << "# command = " << doc.at("command").get<std::string>() << "\n";
    comment_block(os, "config.", doc.at("config"));
    comment_block(os, "summary.", doc.at("summary"));
    const auto& cols = doc.at("columns");
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i].get<std::string>();
    os << "\n";
    auto emit = [&](const Json& row) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell(row[i]);
        os << "\n";
    };
    for (const auto& row : doc.at("rows")) emit(row);
    if (doc.contains("footer")) emit(doc.at("footer"));
    return os.str();
}

std::string render_json(const Json& doc) {
    Json out = Json::object();
    out["command"] = doc.at("command");
    out["config"] = doc.at("config");
    out["summary"] = doc.at("summary");
    out["columns"] = doc.at("columns");
    Json rows = Json::array();
    for (const auto& row : doc.at("rows")) rows.push_back(keyed(doc.at("columns"), row));
    out["rows"] = rows;
    if (doc.contains("footer")) out["footer"] = keyed(doc.at("columns"), doc.at("footer"));
    return out.dump(2) + "\n";
}

std::string write_report(const Json& doc, const std::string& out_dir, const std::string& stem, Format format) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + out_dir + "': " + ec.message());
    const fs::path path = fs::path(out_dir) / (stem + (format == Format::csv ? ".csv" : ".json"));
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot write '" + path.string() + "'");
    f << (format == Format::csv ? render_csv(doc) : render_json(doc));
    f.close();
    if (!f) throw ConfigError("write failed for '" + path.string() + "'");
    return path.string();
}

}  // namespace bsq::cli
