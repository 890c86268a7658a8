#include "trustq/errors.hpp"

#include "trustq/format.hpp"

namespace trustq {

ValidationError::ValidationError(std::string field, std::string bound, double value)
    : ValidationError(field, bound,
                      field + " = " + format_shortest(value) + " violates " + bound) {}

ValidationError::ValidationError(std::string field, std::string message)
    : ValidationError(field, std::string{}, field + ": " + message) {}

ValidationError::ValidationError(std::string field, std::string bound, std::string message)
    : Error(message), field_(std::move(field)), bound_(std::move(bound)) {
  // Keep the part after the field name so a prefixed copy can rebuild it.
  detail_ = message.substr(field_.size());
}

ValidationError ValidationError::with_prefix(const std::string& prefix) const {
  std::string field = prefix + field_;
  std::string message = field + detail_;
  return ValidationError(std::move(field), bound_, std::move(message));
}

InsufficientDataError::InsufficientDataError(std::size_t required, std::size_t available)
    : Error("insufficient data: requires at least " + std::to_string(required) +
            " records, have " + std::to_string(available)),
      required_(required),
      available_(available) {}

}  // namespace trustq
