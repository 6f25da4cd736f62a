#pragma once

#include <iosfwd>
#include <string>

#include "rsl/curve.hpp"

namespace rsl {

enum class FileFormat { kCsv, kJson };

FileFormat format_from_string(const std::string& s);

// CSV layout: '# key=value' metadata lines, a column header, then one row
// per depth. Values carry 17 significant digits so a read-back reproduces
// the curve bit-exactly.
void write_csv(const EnergyCurve& curve, std::ostream& out);
EnergyCurve read_csv(std::istream& in);

void write_json(const EnergyCurve& curve, std::ostream& out);
EnergyCurve read_json(std::istream& in);

// path "-" means stdout (write) / stdin (read).
void write_curve_file(const EnergyCurve& curve, const std::string& path, FileFormat format);
EnergyCurve read_curve_file(const std::string& path, FileFormat format);

// Shared value formatting for all emitted data files.
std::string format_double(double v);

}  // namespace rsl
