#include "hetmos/dataset_io.hpp"

#include "hetmos/errors.hpp"
#include "hetmos/io_util.hpp"

namespace hetmos {
namespace {

constexpr const char* kFixedColumns[] = {"id", "system_id", "domain_tag", "y", "true_noise_var"};
constexpr std::size_t kNumFixed = 5;

}  // namespace

std::string dataset_to_csv(const Dataset& data) {
  const Eigen::Index d = data.empty() ? 0 : data.front().features.size();
  std::string out = "id,system_id,domain_tag,y,true_noise_var";
  for (Eigen::Index j = 0; j < d; ++j) out += ",f" + std::to_string(j);
  out += '\n';
  for (const auto& s : data) {
    if (s.features.size() != d) throw ShapeError("sample '" + s.id + "' has inconsistent feature length");
    out += s.id + ',' + s.system_id + ',' + to_string(s.domain_tag) + ',' + format_double(s.y) + ',';
    if (s.true_noise_var) out += format_double(*s.true_noise_var);
    for (Eigen::Index j = 0; j < d; ++j) {
      out += ',';
      out += format_double(s.features(j));
    }
    out += '\n';
  }
  return out;
}

Dataset dataset_from_csv(const std::string& text, const std::string& source) {
  std::size_t pos = 0;
  std::size_t line_no = 0;
  auto next_line = [&](std::string_view& line) {
    if (pos >= text.size()) return false;
    auto end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    line = std::string_view(text).substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;
    ++line_no;
    return true;
  };
  auto where = [&] { return source + ":" + std::to_string(line_no); };

  std::string_view header;
  if (!next_line(header)) throw ParseError(source + ": empty dataset file");
  const auto cols = split_fields(header);
  if (cols.size() < kNumFixed) throw ParseError(where() + ": header has too few columns");
  for (std::size_t i = 0; i < kNumFixed; ++i)
    if (cols[i] != kFixedColumns[i])
      throw ParseError(where() + ": expected column '" + kFixedColumns[i] + "', found '" + std::string(cols[i]) + "'");
  const std::size_t d = cols.size() - kNumFixed;
  for (std::size_t j = 0; j < d; ++j)
    if (cols[kNumFixed + j] != "f" + std::to_string(j))
      throw ParseError(where() + ": expected feature column 'f" + std::to_string(j) + "'");

  Dataset data;
  std::string_view line;
  while (next_line(line)) {
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != cols.size())
      throw ParseError(where() + ": expected " + std::to_string(cols.size()) + " fields, found " +
                       std::to_string(f.size()));
    Sample s;
    s.id = std::string(f[0]);
    s.system_id = std::string(f[1]);
    try {
      s.domain_tag = domain_tag_from_string(std::string(f[2]));
    } catch (const InputError& e) {
      throw ParseError(where() + ": " + e.what());
    }
    s.y = parse_double(f[3], where());
    if (!f[4].empty()) s.true_noise_var = parse_double(f[4], where());
    s.features.resize(static_cast<Eigen::Index>(d));
    for (std::size_t j = 0; j < d; ++j) s.features(static_cast<Eigen::Index>(j)) = parse_double(f[kNumFixed + j], where());
    data.push_back(std::move(s));
  }
  return data;
}

void write_dataset_csv(const std::string& path, const Dataset& data) { write_file_atomic(path, dataset_to_csv(data)); }

Dataset read_dataset_csv(const std::string& path) { return dataset_from_csv(read_file(path), path); }

}  // namespace hetmos
