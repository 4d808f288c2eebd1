#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace pfqed::cli {

struct Record;

// std::variant cannot hold the incomplete Record directly, so nested records
// are boxed in vectors.
struct Object
{
    std::vector<Record> box; ///< exactly one element
    Record const& get() const { return box.front(); }
};

struct Array
{
    std::vector<Record> items;
};

/// A field value. Nested records flatten into the parent row in CSV; lists of
/// records appear only in JSON.
using Value = std::variant<double, long long, bool, std::string, Object, Array>;

struct Field
{
    std::string key;
    Value value;
    std::string unit; ///< appended to the CSV column name, e.g. "MHz"
};

struct Record
{
    std::vector<Field> fields;

    Record& add(std::string key, double v, std::string unit = {});
    Record& add(std::string key, int v);
    Record& add(std::string key, long long v);
    Record& add(std::string key, bool v);
    Record& add(std::string key, std::string v);
    Record& add(std::string key, char const* v) { return add(std::move(key), std::string(v)); }
    Record& add(std::string key, Record v);
    Record& add(std::string key, std::vector<Record> v);
};

enum class Format
{
    csv,
    json
};

/// Numbers use 17 significant digits so output is byte-stable and round-trips.
std::string format_number(double v);

/// One header row plus one line per record. All records must share a layout.
void write_csv(std::ostream& os, std::vector<Record> const& rows);

/// A single record is written as an object, several as an array.
void write_json(std::ostream& os, std::vector<Record> const& rows);

void write(std::ostream& os, std::vector<Record> const& rows, Format format);

} // namespace pfqed::cli
