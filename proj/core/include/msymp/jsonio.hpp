#ifndef MSYMP_JSONIO_HPP
#define MSYMP_JSONIO_HPP

#include <string>
#include <utility>
#include <vector>

#include "msymp/claws.hpp"
#include "msymp/dynamics.hpp"

namespace msymp {

/// Insertion-ordered JSON value with deterministic serialization: doubles
/// print with 17 significant digits so equal runs give byte-identical
/// files and values round-trip exactly.
class JsonValue {
  public:
    JsonValue() = default;

    static JsonValue object();
    static JsonValue array();
    static JsonValue str(std::string s);
    static JsonValue num(double v);
    static JsonValue integer(long long v);
    static JsonValue boolean(bool v);

    JsonValue& set(const std::string& key, JsonValue v);  ///< object insert or overwrite
    void push(JsonValue v);                               ///< array append

    std::string dump(int indent = 2) const;

  private:
    enum class Kind { null_v, bool_v, int_v, num_v, str_v, arr_v, obj_v };
    Kind kind_ = Kind::null_v;
    bool b_ = false;
    long long i_ = 0;
    double d_ = 0.0;
    std::string s_;
    std::vector<JsonValue> items_;
    std::vector<std::pair<std::string, JsonValue>> members_;

    void write(std::string& out, int indent, int depth) const;
};

/// Formats a double with 17 significant digits (%.17g).
std::string format_double(double v);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

/// Writes one CSV per snapshot (snap_00000.csv, ... with an x column and
/// one column per variable) plus manifest.json describing grid, times,
/// variables, ramp slopes and the snapshot file list. config_echo, when
/// non-null, is embedded under "config".
void write_history(const FieldHistory& history, const std::string& system_name,
                   const std::string& dir, const JsonValue* config_echo = nullptr);

/// Rebuilds a history from a directory written by write_history.
FieldHistory read_history(const std::string& dir, std::string* system_name = nullptr);

JsonValue report_json(const ConservationReport& report);
JsonValue hamilton_json(const HamiltonReport& report);

}  // namespace msymp

#endif
