#include "mcpac/class_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace mcpac {

namespace {

// Next content line, skipping blanks and '#' comments.
bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    if (line[start] == '#') continue;
    return true;
  }
  return false;
}

long parse_header_field(const std::string& token, const std::string& key) {
  const std::string prefix = key + "=";
  if (token.rfind(prefix, 0) != 0) {
    throw IoError("class header: expected " + prefix + "<count>, got '" + token + "'");
  }
  std::string digits = token.substr(prefix.size());
  std::size_t pos = 0;
  long value = 0;
  try {
    value = std::stol(digits, &pos);
  } catch (const std::exception&) {
    throw IoError("class header: bad count in '" + token + "'");
  }
  if (pos != digits.size() || value < 0) {
    throw IoError("class header: bad count in '" + token + "'");
  }
  return value;
}

}  // namespace

std::shared_ptr<ExplicitClass> read_class(std::istream& in,
                                          std::shared_ptr<LabelSpace> space) {
  if (!space) throw InvalidInputError("read_class needs a label space");
  std::string line;
  if (!next_line(in, line)) throw IoError("class file is empty");

  std::istringstream header(line);
  std::string tok_points, tok_labels, tok_hyps, extra;
  if (!(header >> tok_points >> tok_labels >> tok_hyps) || (header >> extra)) {
    throw IoError("class header must be 'points=<n> labels=<k> hyps=<h>'");
  }
  long n = parse_header_field(tok_points, "points");
  long k = parse_header_field(tok_labels, "labels");
  long h = parse_header_field(tok_hyps, "hyps");
  if (n < 1 || k < 1 || h < 1) throw IoError("class header counts must be positive");

  std::set<std::string> distinct_tokens;
  std::vector<Hypothesis> hypotheses;
  hypotheses.reserve(static_cast<std::size_t>(h));
  for (long row = 0; row < h; ++row) {
    if (!next_line(in, line)) {
      throw IoError("class file ends after " + std::to_string(row) + " of " +
                    std::to_string(h) + " hypothesis rows");
    }
    std::istringstream cells(line);
    std::vector<LabelId> ids;
    ids.reserve(static_cast<std::size_t>(n));
    std::string token;
    while (cells >> token) {
      distinct_tokens.insert(token);
      try {
        ids.push_back(space->parse(token));
      } catch (const InvalidInputError& e) {
        throw IoError("class row " + std::to_string(row + 1) + ": " + e.what());
      }
    }
    if (static_cast<long>(ids.size()) != n) {
      throw IoError("class row " + std::to_string(row + 1) + " has " +
                    std::to_string(ids.size()) + " labels, expected " + std::to_string(n));
    }
    hypotheses.push_back(Hypothesis::dense(std::move(ids)));
  }
  if (static_cast<long>(distinct_tokens.size()) != k) {
    throw IoError("class file declares labels=" + std::to_string(k) + " but rows use " +
                  std::to_string(distinct_tokens.size()) + " distinct labels");
  }
  try {
    return std::make_shared<ExplicitClass>(space, static_cast<int>(n), std::move(hypotheses));
  } catch (const InvalidInputError& e) {
    throw IoError(std::string("class file: ") + e.what());
  }
}

std::shared_ptr<ExplicitClass> read_class(std::istream& in) {
  return read_class(in, std::make_shared<LabelSpace>());
}

std::shared_ptr<ExplicitClass> read_class_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open class file: " + path);
  return read_class(in);
}

void write_class(const ExplicitClass& cls, std::ostream& out) {
  const LabelSpace& space = *cls.space();
  std::set<LabelId> used;
  for (std::size_t i = 0; i < cls.size(); ++i) {
    for (LabelId y : cls.at(i).dense_row()) used.insert(y);
  }
  out << "points=" << cls.domain_size() << " labels=" << used.size()
      << " hyps=" << cls.size() << "\n";
  for (std::size_t i = 0; i < cls.size(); ++i) {
    const auto& row = cls.at(i).dense_row();
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j > 0) out << ' ';
      out << space.name(row[j]);
    }
    out << "\n";
  }
}

void write_class_file(const ExplicitClass& cls, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open class file for writing: " + path);
  write_class(cls, out);
  if (!out) throw IoError("failed writing class file: " + path);
}

}  // namespace mcpac
