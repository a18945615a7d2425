#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "jsp/instance.hpp"

namespace jsp {

enum class InstanceFormat { taillard, standard, facts };

InstanceFormat parse_format(std::string_view name);
std::string to_string(InstanceFormat format);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

Instance parse_instance(std::istream& in, InstanceFormat format);
Instance parse_instance(std::string_view text, InstanceFormat format);
Instance load_instance(const std::string& path, InstanceFormat format);

/// Writes `inst` so that parse_instance(emit) == inst. The matrix formats
/// require every job to have exactly machine_count operations.
void emit_instance(std::ostream& out, const Instance& inst, InstanceFormat format);
std::string emit_instance(const Instance& inst, InstanceFormat format);

/// CSV `job,step,machine,start,processing`, rows sorted by (machine, start).
void write_schedule_csv(std::ostream& out, const Instance& inst, const Schedule& sched);
std::string schedule_csv(const Instance& inst, const Schedule& sched);

/// Reads the CSV written by write_schedule_csv. Machine and processing
/// columns are ignored; the instance is authoritative for both.
Schedule read_schedule_csv(std::istream& in);

}  // namespace jsp
