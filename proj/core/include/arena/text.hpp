#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace arena::text {

std::string trim(std::string_view s);
std::string to_lower(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
bool starts_with_ci(std::string_view s, std::string_view prefix);
std::vector<std::string> split_lines(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

/// Named placeholders are `{name}` where name is [A-Za-z0-9_]+. `{{` and `}}`
/// render literal braces. Rendering fails with TemplateError when the template
/// references a name that is not bound, or when a bound value is unused and
/// `require_all_used` is set.
class Template {
public:
  Template() = default;
  explicit Template(std::string source);

  const std::string& source() const noexcept { return source_; }
  /// Placeholder names in order of first appearance.
  std::vector<std::string> placeholders() const;

  std::string render(const std::map<std::string, std::string>& values,
                     bool require_all_used = false) const;

private:
  std::string source_;
};

}  // namespace arena::text
