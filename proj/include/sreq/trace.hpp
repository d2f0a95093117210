#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "sreq/model.hpp"
#include "sreq/vcgen.hpp"

namespace sreq {

struct FeatureRef {
  std::string cls;
  std::string feature;
  auto operator<=>(const FeatureRef&) const = default;
  std::string str() const { return cls + "." + feature; }
};

/// Drivers are identified by the class that declares them, so an inherited
/// driver is one row no matter how many classes flatten it in.
/// Ordered by owner, then by name with digit runs compared numerically
/// (req_9 before req_10).
struct DriverRef {
  std::string owner;
  std::string name;
  bool operator==(const DriverRef&) const = default;
  bool operator<(const DriverRef& other) const;
  std::string str() const { return owner + "." + name; }
};

struct TraceMatrix {
  std::map<DriverRef, std::set<FeatureRef>> down;
  std::map<FeatureRef, std::set<DriverRef>> up;
};

class UnknownFeature : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Calls, attribute reads and query applications on object arguments,
/// anywhere in the driver.
std::set<FeatureRef> references(const SpecificationDriver& driver, const Project& project);

TraceMatrix build_matrix(const Project& project);

/// "CLOCK.tick"; throws UnknownFeature when the class or feature is missing.
FeatureRef parse_feature(const Project& project, const std::string& text);

struct ImpactRow {
  DriverRef driver;
  std::optional<Status> verdict;
};

/// Drivers constraining `feature`, annotated with any verdict known for them.
std::vector<ImpactRow> impact(const Project& project, const std::string& feature,
                              const std::map<DriverRef, Status>& verdicts = {});

}  // namespace sreq
