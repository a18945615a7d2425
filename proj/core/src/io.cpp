#include "jsp/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

namespace jsp {

InstanceFormat parse_format(std::string_view name) {
  if (name == "taillard") return InstanceFormat::taillard;
  if (name == "standard") return InstanceFormat::standard;
  if (name == "facts") return InstanceFormat::facts;
  throw std::invalid_argument("unknown instance format '" + std::string(name) + "'");
}

std::string to_string(InstanceFormat format) {
  switch (format) {
    case InstanceFormat::taillard: return "taillard";
    case InstanceFormat::standard: return "standard";
    case InstanceFormat::facts: return "facts";
  }
  return "unknown";
}

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& what)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  long long value;
  std::size_t line;
  std::size_t column;
};

struct NumberLine {
  std::size_t line;
  std::vector<Token> tokens;
};

bool has_letter(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](unsigned char c) { return std::isalpha(c) != 0; });
}

// Splits the text into lines of integers. Blank lines, '#' comments and
// purely textual header lines ("Times", "Machines", ...) are skipped.
std::vector<NumberLine> number_lines(std::string_view text, bool skip_text_lines) {
  std::vector<NumberLine> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    ++line_no;
    pos = eol + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (skip_text_lines && has_letter(line)) continue;

    NumberLine parsed{line_no, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      const unsigned char c = static_cast<unsigned char>(line[i]);
      if (std::isspace(c) || c == ',') {
        ++i;
        continue;
      }
      long long value = 0;
      auto [end, ec] = std::from_chars(line.data() + i, line.data() + line.size(), value);
      if (ec != std::errc() || end == line.data() + i)
        throw ParseError(line_no, i + 1, "expected an integer");
      parsed.tokens.push_back({value, line_no, i + 1});
      i = static_cast<std::size_t>(end - line.data());
    }
    if (!parsed.tokens.empty()) lines.push_back(std::move(parsed));
    if (eol == text.size()) break;
  }
  return lines;
}

std::string default_label(std::size_t id) { return std::to_string(id); }

void fill_default_labels(Instance& inst) {
  inst.job_labels.clear();
  inst.machine_labels.clear();
  for (std::size_t j = 1; j <= inst.jobs.size(); ++j) inst.job_labels.push_back(default_label(j));
  for (int m = 1; m <= inst.machine_count; ++m) inst.machine_labels.push_back(default_label(m));
}

std::pair<int, int> read_dimensions(const std::vector<NumberLine>& lines) {
  if (lines.empty()) throw ParseError(1, 1, "missing dimension line 'J M'");
  const auto& head = lines.front();
  if (head.tokens.size() < 2) throw ParseError(head.line, 1, "dimension line needs 'J M'");
  const Token& jobs = head.tokens[0];
  const Token& machines = head.tokens[1];
  if (jobs.value < 1) throw ParseError(jobs.line, jobs.column, "job count must be positive");
  if (machines.value < 1)
    throw ParseError(machines.line, machines.column, "machine count must be positive");
  return {static_cast<int>(jobs.value), static_cast<int>(machines.value)};
}

void check_processing(const Token& t) {
  if (t.value < 1) throw ParseError(t.line, t.column, "non-positive processing time");
}

Instance parse_standard(std::string_view text) {
  const auto lines = number_lines(text, false);
  const auto [jobs, machines] = read_dimensions(lines);
  if (lines.size() - 1 != static_cast<std::size_t>(jobs)) {
    const std::size_t at = lines.size() > 1 ? lines.back().line : lines.front().line;
    throw ParseError(at, 1,
                     "inconsistent dimensions: declared " + std::to_string(jobs) + " jobs, found " +
                         std::to_string(lines.size() - 1) + " job lines");
  }
  Instance inst;
  inst.machine_count = machines;
  for (int j = 0; j < jobs; ++j) {
    const NumberLine& row = lines[static_cast<std::size_t>(j) + 1];
    if (row.tokens.size() != 2 * static_cast<std::size_t>(machines))
      throw ParseError(row.line, 1,
                       "inconsistent dimensions: expected " + std::to_string(machines) +
                           " machine/time pairs, found " + std::to_string(row.tokens.size()) +
                           " values");
    std::vector<Operation> ops;
    for (int s = 0; s < machines; ++s) {
      const Token& m = row.tokens[2 * s];
      const Token& p = row.tokens[2 * s + 1];
      if (m.value < 0 || m.value >= machines)
        throw ParseError(m.line, m.column, "machine index out of range");
      check_processing(p);
      ops.push_back({{j + 1, s + 1}, static_cast<int>(m.value) + 1, p.value});
    }
    inst.jobs.push_back(std::move(ops));
  }
  fill_default_labels(inst);
  inst.machine_labels.clear();
  for (int m = 0; m < machines; ++m) inst.machine_labels.push_back(std::to_string(m));
  return inst;
}

Instance parse_taillard(std::string_view text) {
  const auto lines = number_lines(text, true);
  const auto [jobs, machines] = read_dimensions(lines);
  const std::size_t expected = 1 + 2 * static_cast<std::size_t>(jobs);
  if (lines.size() != expected) {
    const std::size_t at = lines.back().line;
    throw ParseError(at, 1,
                     "inconsistent dimensions: expected " + std::to_string(2 * jobs) +
                         " matrix rows, found " + std::to_string(lines.size() - 1));
  }
  Instance inst;
  inst.machine_count = machines;
  for (int j = 0; j < jobs; ++j) {
    const NumberLine& times = lines[1 + static_cast<std::size_t>(j)];
    const NumberLine& order = lines[1 + static_cast<std::size_t>(jobs + j)];
    for (const NumberLine* row : {&times, &order})
      if (row->tokens.size() != static_cast<std::size_t>(machines))
        throw ParseError(row->line, 1,
                         "inconsistent dimensions: expected " + std::to_string(machines) +
                             " values, found " + std::to_string(row->tokens.size()));
    std::vector<Operation> ops;
    for (int s = 0; s < machines; ++s) {
      const Token& p = times.tokens[s];
      const Token& m = order.tokens[s];
      check_processing(p);
      if (m.value < 1 || m.value > machines)
        throw ParseError(m.line, m.column, "machine index out of range");
      ops.push_back({{j + 1, s + 1}, static_cast<int>(m.value), p.value});
    }
    inst.jobs.push_back(std::move(ops));
  }
  fill_default_labels(inst);
  return inst;
}

class FactScanner {
 public:
  explicit FactScanner(std::string_view text) : text_(text) {}

  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }

  void expect_word(std::string_view word) {
    skip();
    const auto l = line_, c = column_;
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      advance();
    if (text_.substr(start, pos_ - start) != word)
      throw ParseError(l, c, "expected '" + std::string(word) + "'");
  }

  void expect(char ch) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != ch)
      throw ParseError(line_, column_, std::string("expected '") + ch + "'");
    advance();
  }

  Token integer() {
    skip();
    Token t{0, line_, column_};
    auto [end, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), t.value);
    if (ec != std::errc() || end == text_.data() + pos_)
      throw ParseError(line_, column_, "expected an integer");
    while (text_.data() + pos_ != end) advance();
    return t;
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

struct RawFact {
  Token job, step, machine, processing;
};

Instance parse_facts(std::string_view text) {
  FactScanner scan(text);
  std::vector<RawFact> facts;
  while (!scan.at_end()) {
    scan.expect_word("operation");
    scan.expect('(');
    RawFact f;
    f.job = scan.integer();
    scan.expect(',');
    f.step = scan.integer();
    scan.expect(',');
    f.machine = scan.integer();
    scan.expect(',');
    f.processing = scan.integer();
    scan.expect(')');
    scan.expect('.');
    check_processing(f.processing);
    facts.push_back(f);
  }
  if (facts.empty()) throw ParseError(1, 1, "no operation facts");

  std::map<long long, int> job_ids;
  std::map<long long, int> machine_ids;
  for (const auto& f : facts) {
    job_ids.emplace(f.job.value, 0);
    machine_ids.emplace(f.machine.value, 0);
  }
  Instance inst;
  for (auto& [label, id] : job_ids) {
    id = static_cast<int>(inst.job_labels.size()) + 1;
    inst.job_labels.push_back(std::to_string(label));
  }
  for (auto& [label, id] : machine_ids) {
    id = static_cast<int>(inst.machine_labels.size()) + 1;
    inst.machine_labels.push_back(std::to_string(label));
  }
  inst.machine_count = static_cast<int>(machine_ids.size());

  std::vector<std::map<long long, const RawFact*>> steps(job_ids.size());
  for (const auto& f : facts) {
    auto& job_steps = steps[job_ids[f.job.value] - 1];
    if (!job_steps.emplace(f.step.value, &f).second)
      throw ParseError(f.step.line, f.step.column,
                       "duplicate step " + std::to_string(f.step.value) + " of job " +
                           std::to_string(f.job.value));
  }
  for (std::size_t j = 0; j < steps.size(); ++j) {
    std::vector<Operation> ops;
    long long expected = 1;
    for (const auto& [step, fact] : steps[j]) {
      if (step != expected)
        throw ParseError(fact->step.line, fact->step.column,
                         "non-consecutive steps: expected step " + std::to_string(expected));
      ops.push_back({{static_cast<int>(j + 1), static_cast<int>(step)},
                     machine_ids[fact->machine.value],
                     fact->processing.value});
      ++expected;
    }
    inst.jobs.push_back(std::move(ops));
  }
  return inst;
}

void require_matrix_shape(const Instance& inst, InstanceFormat format) {
  for (const auto& job : inst.jobs)
    if (job.size() != static_cast<std::size_t>(inst.machine_count))
      throw std::invalid_argument(to_string(format) +
                                  " format needs exactly one operation per machine slot in every job");
}

}  // namespace

Instance parse_instance(std::string_view text, InstanceFormat format) {
  switch (format) {
    case InstanceFormat::standard: return parse_standard(text);
    case InstanceFormat::taillard: return parse_taillard(text);
    case InstanceFormat::facts: return parse_facts(text);
  }
  throw std::invalid_argument("unknown instance format");
}

Instance parse_instance(std::istream& in, InstanceFormat format) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(std::string_view(buffer.str()), format);
}

Instance load_instance(const std::string& path, InstanceFormat format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_instance(in, format);
}

void emit_instance(std::ostream& out, const Instance& inst, InstanceFormat format) {
  switch (format) {
    case InstanceFormat::facts:
      for (const auto& job : inst.jobs)
        for (const auto& op : job)
          out << "operation(" << op.ref.job << ',' << op.ref.step << ',' << op.machine << ','
              << op.processing << ").\n";
      return;
    case InstanceFormat::standard:
      require_matrix_shape(inst, format);
      out << inst.jobs.size() << ' ' << inst.machine_count << '\n';
      for (const auto& job : inst.jobs) {
        for (std::size_t s = 0; s < job.size(); ++s)
          out << (s ? " " : "") << job[s].machine - 1 << ' ' << job[s].processing;
        out << '\n';
      }
      return;
    case InstanceFormat::taillard:
      require_matrix_shape(inst, format);
      out << inst.jobs.size() << ' ' << inst.machine_count << '\n';
      for (const auto& job : inst.jobs) {
        for (std::size_t s = 0; s < job.size(); ++s) out << (s ? " " : "") << job[s].processing;
        out << '\n';
      }
      for (const auto& job : inst.jobs) {
        for (std::size_t s = 0; s < job.size(); ++s) out << (s ? " " : "") << job[s].machine;
        out << '\n';
      }
      return;
  }
}

std::string emit_instance(const Instance& inst, InstanceFormat format) {
  std::ostringstream out;
  emit_instance(out, inst, format);
  return out.str();
}

void write_schedule_csv(std::ostream& out, const Instance& inst, const Schedule& sched) {
  struct Row {
    OperationRef ref;
    int machine;
    Time start;
    Time processing;
  };
  std::vector<Row> rows;
  rows.reserve(sched.size());
  for (const auto& [ref, start] : sched) {
    const Operation& op = inst.at(ref);
    rows.push_back({ref, op.machine, start, op.processing});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.machine, a.start, a.ref) < std::tie(b.machine, b.start, b.ref);
  });
  out << "job,step,machine,start,processing\n";
  for (const auto& r : rows)
    out << r.ref.job << ',' << r.ref.step << ',' << r.machine << ',' << r.start << ','
        << r.processing << '\n';
}

std::string schedule_csv(const Instance& inst, const Schedule& sched) {
  std::ostringstream out;
  write_schedule_csv(out, inst, sched);
  return out.str();
}

Schedule read_schedule_csv(std::istream& in) {
  Schedule sched;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || has_letter(line)) continue;
    std::vector<long long> fields;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      long long v = 0;
      const char* first = cell.data();
      while (first != cell.data() + cell.size() && std::isspace(static_cast<unsigned char>(*first))) ++first;
      auto [end, ec] = std::from_chars(first, cell.data() + cell.size(), v);
      if (ec != std::errc()) throw ParseError(line_no, 1, "malformed schedule row");
      (void)end;
      fields.push_back(v);
    }
    if (fields.size() < 4) throw ParseError(line_no, 1, "schedule row needs job,step,machine,start");
    const OperationRef ref{static_cast<int>(fields[0]), static_cast<int>(fields[1])};
    if (sched.covers(ref)) throw ParseError(line_no, 1, "duplicate row for " + to_string(ref));
    sched.set(ref, fields[3]);
  }
  return sched;
}

}  // namespace jsp
