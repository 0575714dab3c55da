#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace twreach {

/// Tallies the bits of named working-state items over one run.
class SpaceMeter {
 public:
  /// Throws PreconditionError if `name` is already registered.
  void register_item(const std::string& name, std::uint64_t bits);

  /// Throws PreconditionError if `name` is not registered.
  void release(const std::string& name);

  bool registered(const std::string& name) const { return items_.count(name) != 0; }
  std::uint64_t current_bits() const noexcept { return current_; }
  std::uint64_t peak_bits() const noexcept { return peak_; }
  const std::map<std::string, std::uint64_t>& items() const noexcept { return items_; }

 private:
  std::map<std::string, std::uint64_t> items_;
  std::uint64_t current_ = 0;
  std::uint64_t peak_ = 0;
};

void meter_register(SpaceMeter& meter, const std::string& name, std::uint64_t bits);
void meter_release(SpaceMeter& meter, const std::string& name);

/// Bits needed to store any integer in [0, x]: ceil(log2(x + 1)).
std::uint64_t bits_for(std::uint64_t x) noexcept;

}  // namespace twreach
