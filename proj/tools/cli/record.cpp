#include "record.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace pfqed::cli {

Record& Record::add(std::string key, double v, std::string unit)
{
    fields.push_back(Field{std::move(key), v, std::move(unit)});
    return *this;
}

Record& Record::add(std::string key, int v)
{
    return add(std::move(key), static_cast<long long>(v));
}

Record& Record::add(std::string key, long long v)
{
    fields.push_back(Field{std::move(key), v, {}});
    return *this;
}

Record& Record::add(std::string key, bool v)
{
    fields.push_back(Field{std::move(key), v, {}});
    return *this;
}

Record& Record::add(std::string key, std::string v)
{
    fields.push_back(Field{std::move(key), std::move(v), {}});
    return *this;
}

Record& Record::add(std::string key, Record v)
{
    fields.push_back(Field{std::move(key), Object{{std::move(v)}}, {}});
    return *this;
}

Record& Record::add(std::string key, std::vector<Record> v)
{
    fields.push_back(Field{std::move(key), Array{std::move(v)}, {}});
    return *this;
}

std::string format_number(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    if (v == 0.0) {
        return "0"; // folds -0 as well
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string column_name(Field const& f)
{
    return f.unit.empty() ? f.key : f.key + "_" + f.unit;
}

void collect_columns(Record const& r, std::vector<std::string>& out)
{
    for (auto const& f : r.fields) {
        if (auto const* sub = std::get_if<Object>(&f.value)) {
            collect_columns(sub->get(), out);
        } else if (!std::holds_alternative<Array>(f.value)) {
            out.push_back(column_name(f));
        }
    }
}

std::string csv_escape(std::string const& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

void collect_cells(Record const& r, std::vector<std::string>& out)
{
    for (auto const& f : r.fields) {
        std::visit(
            [&](auto const& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, double>) {
                    out.push_back(format_number(v));
                } else if constexpr (std::is_same_v<T, long long>) {
                    out.push_back(std::to_string(v));
                } else if constexpr (std::is_same_v<T, bool>) {
                    out.push_back(v ? "true" : "false");
                } else if constexpr (std::is_same_v<T, std::string>) {
                    out.push_back(csv_escape(v));
                } else if constexpr (std::is_same_v<T, Object>) {
                    collect_cells(v.get(), out);
                }
            },
            f.value);
    }
}

void join(std::ostream& os, std::vector<std::string> const& cells)
{
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) {
            os << ',';
        }
        os << cells[i];
    }
    os << '\n';
}

std::string json_string(std::string const& s)
{
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"':
            out += "\\\"";
            break;
        case '\\':
            out += "\\\\";
            break;
        case '\n':
            out += "\\n";
            break;
        case '\t':
            out += "\\t";
            break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out + "\"";
}

void json_record(std::ostream& os, Record const& r, int indent);
void json_array(std::ostream& os, std::vector<Record> const& v, int indent);

void json_value(std::ostream& os, Value const& value, int indent)
{
    std::visit(
        [&](auto const& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                // JSON has no literal for non-finite numbers.
                os << (std::isfinite(v) ? format_number(v) : "null");
            } else if constexpr (std::is_same_v<T, long long>) {
                os << v;
            } else if constexpr (std::is_same_v<T, bool>) {
                os << (v ? "true" : "false");
            } else if constexpr (std::is_same_v<T, std::string>) {
                os << json_string(v);
            } else if constexpr (std::is_same_v<T, Object>) {
                json_record(os, v.get(), indent);
            } else {
                json_array(os, v.items, indent);
            }
        },
        value);
}

void json_array(std::ostream& os, std::vector<Record> const& v, int indent)
{
    if (v.empty()) {
        os << "[]";
        return;
    }
    std::string const pad(indent + 2, ' ');
    os << "[\n";
    for (std::size_t i = 0; i < v.size(); ++i) {
        os << pad;
        json_record(os, v[i], indent + 2);
        os << (i + 1 < v.size() ? ",\n" : "\n");
    }
    os << std::string(indent, ' ') << ']';
}

void json_record(std::ostream& os, Record const& r, int indent)
{
    if (r.fields.empty()) {
        os << "{}";
        return;
    }
    std::string const pad(indent + 2, ' ');
    os << "{\n";
    for (std::size_t i = 0; i < r.fields.size(); ++i) {
        os << pad << json_string(r.fields[i].key) << ": ";
        json_value(os, r.fields[i].value, indent + 2);
        os << (i + 1 < r.fields.size() ? ",\n" : "\n");
    }
    os << std::string(indent, ' ') << '}';
}

} // namespace

void write_csv(std::ostream& os, std::vector<Record> const& rows)
{
    if (rows.empty()) {
        return;
    }
    std::vector<std::string> header;
    collect_columns(rows.front(), header);
    join(os, header);
    for (auto const& r : rows) {
        std::vector<std::string> cells;
        collect_cells(r, cells);
        if (cells.size() != header.size()) {
            throw std::logic_error("write_csv: rows do not share one layout");
        }
        join(os, cells);
    }
}

void write_json(std::ostream& os, std::vector<Record> const& rows)
{
    if (rows.size() == 1) {
        json_record(os, rows.front(), 0);
    } else {
        json_array(os, rows, 0);
    }
    os << '\n';
}

void write(std::ostream& os, std::vector<Record> const& rows, Format format)
{
    if (format == Format::csv) {
        write_csv(os, rows);
    } else {
        write_json(os, rows);
    }
}

} // namespace pfqed::cli
