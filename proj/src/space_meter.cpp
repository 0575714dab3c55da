#include "twreach/space_meter.hpp"

#include <algorithm>
#include <bit>

#include "twreach/errors.hpp"

namespace twreach {

void SpaceMeter::register_item(const std::string& name, std::uint64_t bits) {
  if (!items_.emplace(name, bits).second) {
    throw PreconditionError("meter item '" + name + "' is already registered");
  }
  current_ += bits;
  peak_ = std::max(peak_, current_);
}

void SpaceMeter::release(const std::string& name) {
  auto it = items_.find(name);
  if (it == items_.end()) throw PreconditionError("meter item '" + name + "' is not registered");
  current_ -= it->second;
  items_.erase(it);
}

void meter_register(SpaceMeter& meter, const std::string& name, std::uint64_t bits) {
  meter.register_item(name, bits);
}

void meter_release(SpaceMeter& meter, const std::string& name) { meter.release(name); }

std::uint64_t bits_for(std::uint64_t x) noexcept {
  return static_cast<std::uint64_t>(std::bit_width(x));
}

}  // namespace twreach
