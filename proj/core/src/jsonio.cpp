#include "msymp/jsonio.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace msymp {

JsonValue JsonValue::object() {
    JsonValue v;
    v.kind_ = Kind::obj_v;
    return v;
}

JsonValue JsonValue::array() {
    JsonValue v;
    v.kind_ = Kind::arr_v;
    return v;
}

JsonValue JsonValue::str(std::string s) {
    JsonValue v;
    v.kind_ = Kind::str_v;
    v.s_ = std::move(s);
    return v;
}

JsonValue JsonValue::num(double d) {
    JsonValue v;
    v.kind_ = Kind::num_v;
    v.d_ = d;
    return v;
}

JsonValue JsonValue::integer(long long i) {
    JsonValue v;
    v.kind_ = Kind::int_v;
    v.i_ = i;
    return v;
}

JsonValue JsonValue::boolean(bool b) {
    JsonValue v;
    v.kind_ = Kind::bool_v;
    v.b_ = b;
    return v;
}

JsonValue& JsonValue::set(const std::string& key, JsonValue v) {
    if (kind_ != Kind::obj_v) throw std::logic_error("set() on a non-object JSON value");
    for (auto& [k, existing] : members_)
        if (k == key) {
            existing = std::move(v);
            return *this;
        }
    members_.emplace_back(key, std::move(v));
    return *this;
}

void JsonValue::push(JsonValue v) {
    if (kind_ != Kind::arr_v) throw std::logic_error("push() on a non-array JSON value");
    items_.push_back(std::move(v));
}

std::string format_double(double v) {
    if (v == 0.0) return "0";  // fold the sign of zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void escape_into(std::string& out, const std::string& s) {
    out += '"';
    for (char ch : s) {
        switch (ch) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(ch) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", ch);
                    out += buf;
                } else {
                    out += ch;
                }
        }
    }
    out += '"';
}

void pad(std::string& out, int indent, int depth) {
    if (indent > 0) {
        out += '\n';
        out.append(static_cast<size_t>(indent) * depth, ' ');
    }
}

}  // namespace

void JsonValue::write(std::string& out, int indent, int depth) const {
    switch (kind_) {
        case Kind::null_v: out += "null"; break;
        case Kind::bool_v: out += b_ ? "true" : "false"; break;
        case Kind::int_v: out += std::to_string(i_); break;
        case Kind::num_v: out += format_double(d_); break;
        case Kind::str_v: escape_into(out, s_); break;
        case Kind::arr_v: {
            if (items_.empty()) {
                out += "[]";
                break;
            }
            out += '[';
            for (size_t i = 0; i < items_.size(); ++i) {
                if (i) out += ',';
                pad(out, indent, depth + 1);
                items_[i].write(out, indent, depth + 1);
            }
            pad(out, indent, depth);
            out += ']';
            break;
        }
        case Kind::obj_v: {
            if (members_.empty()) {
                out += "{}";
                break;
            }
            out += '{';
            for (size_t i = 0; i < members_.size(); ++i) {
                if (i) out += ',';
                pad(out, indent, depth + 1);
                escape_into(out, members_[i].first);
                out += indent > 0 ? ": " : ":";
                members_[i].second.write(out, indent, depth + 1);
            }
            pad(out, indent, depth);
            out += '}';
            break;
        }
    }
}

std::string JsonValue::dump(int indent) const {
    std::string out;
    write(out, indent, 0);
    out += '\n';
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

namespace {

std::string snapshot_name(int k) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snap_%05d.csv", k);
    return buf;
}

}  // namespace

void write_history(const FieldHistory& history, const std::string& system_name,
                   const std::string& dir, const JsonValue* config_echo) {
    const int nt = history.n_snaps();
    const int n = history.grid.n;

    JsonValue manifest = JsonValue::object();
    manifest.set("system", JsonValue::str(system_name));
    JsonValue grid = JsonValue::object();
    grid.set("n", JsonValue::integer(history.grid.n));
    grid.set("length", JsonValue::num(history.grid.length));
    grid.set("x0", JsonValue::num(history.grid.x0));
    grid.set("periodic", JsonValue::boolean(history.grid.periodic));
    manifest.set("grid", std::move(grid));

    JsonValue vars = JsonValue::array();
    for (const auto& v : history.vars) vars.push(JsonValue::str(v));
    manifest.set("vars", std::move(vars));

    JsonValue slopes = JsonValue::array();
    for (double s : history.x_slopes) slopes.push(JsonValue::num(s));
    manifest.set("x_slopes", std::move(slopes));

    JsonValue times = JsonValue::array();
    for (double t : history.times) times.push(JsonValue::num(t));
    manifest.set("times", std::move(times));

    JsonValue files = JsonValue::array();
    for (int k = 0; k < nt; ++k) files.push(JsonValue::str(snapshot_name(k)));
    manifest.set("snapshots", std::move(files));
    if (config_echo) manifest.set("config", *config_echo);

    const std::filesystem::path base(dir);
    for (int k = 0; k < nt; ++k) {
        std::string csv = "x";
        for (const auto& v : history.vars) csv += "," + v;
        csv += '\n';
        for (int i = 0; i < n; ++i) {
            csv += format_double(history.grid.x(i));
            for (size_t j = 0; j < history.vars.size(); ++j)
                csv += "," + format_double(history.data[k][j][i]);
            csv += '\n';
        }
        write_text_file((base / snapshot_name(k)).string(), csv);
    }
    write_text_file((base / "manifest.json").string(), manifest.dump());
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

FieldHistory read_history(const std::string& dir, std::string* system_name) {
    const std::filesystem::path base(dir);
    nlohmann::json manifest;
    try {
        manifest = nlohmann::json::parse(read_text_file((base / "manifest.json").string()));
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("manifest.json is not valid JSON: ") + e.what());
    }

    FieldHistory h;
    try {
        if (system_name) *system_name = manifest.at("system").get<std::string>();
        const auto& grid = manifest.at("grid");
        h.grid.n = grid.at("n").get<int>();
        h.grid.length = grid.at("length").get<double>();
        h.grid.x0 = grid.at("x0").get<double>();
        h.grid.periodic = grid.at("periodic").get<bool>();
        h.vars = manifest.at("vars").get<std::vector<std::string>>();
        h.x_slopes = manifest.at("x_slopes").get<std::vector<double>>();
        h.times = manifest.at("times").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("manifest.json is missing fields: ") + e.what());
    }
    const auto files = manifest.at("snapshots").get<std::vector<std::string>>();
    if (files.size() != h.times.size())
        throw std::invalid_argument("manifest lists a different number of snapshots and times");

    for (const auto& name : files) {
        std::istringstream f(read_text_file((base / name).string()));
        std::string line;
        if (!std::getline(f, line)) throw std::invalid_argument(name + " is empty");
        const auto header = split_csv_line(line);
        if (header.size() != h.vars.size() + 1 || header[0] != "x")
            throw std::invalid_argument(name + " header does not match the manifest variables");
        for (size_t j = 0; j < h.vars.size(); ++j)
            if (header[j + 1] != h.vars[j])
                throw std::invalid_argument(name + " header does not match the manifest variables");
        std::vector<std::vector<double>> snap(h.vars.size(),
                                              std::vector<double>(h.grid.n, 0.0));
        for (int i = 0; i < h.grid.n; ++i) {
            if (!std::getline(f, line))
                throw std::invalid_argument(name + " has fewer rows than grid nodes");
            const auto cells = split_csv_line(line);
            if (cells.size() != h.vars.size() + 1)
                throw std::invalid_argument(name + " row has the wrong number of columns");
            for (size_t j = 0; j < h.vars.size(); ++j) snap[j][i] = std::stod(cells[j + 1]);
        }
        h.data.push_back(std::move(snap));
    }
    return h;
}

JsonValue report_json(const ConservationReport& report) {
    JsonValue v = JsonValue::object();
    v.set("law", JsonValue::str(report.law));
    v.set("residual_l2", JsonValue::num(report.residual_l2));
    v.set("residual_linf", JsonValue::num(report.residual_linf));
    if (report.order_estimate) v.set("order", JsonValue::num(*report.order_estimate));
    return v;
}

JsonValue hamilton_json(const HamiltonReport& report) {
    JsonValue v = JsonValue::object();
    v.set("pair", JsonValue::str(report.pair));
    v.set("q_l2", JsonValue::num(report.q_l2));
    v.set("q_linf", JsonValue::num(report.q_linf));
    v.set("p_l2", JsonValue::num(report.p_l2));
    v.set("p_linf", JsonValue::num(report.p_linf));
    return v;
}

}  // namespace msymp
