#pragma once

#include <stdexcept>
#include <string>

namespace channelkit {

// Base for everything thrown by this library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

class negative_weight : public error {
public:
    using error::error;
};

class zero_total_mass : public error {
public:
    using error::error;
};

class not_normalized : public error {
public:
    using error::error;
};

class space_mismatch : public error {
public:
    using error::error;
};

class unknown_outcome : public error {
public:
    using error::error;
};

class zero_validity : public error {
public:
    using error::error;
};

// Raised by the dagger when the predicted state has a zero weight; carries
// the offending outcome label.
class prediction_not_full_support : public error {
public:
    explicit prediction_not_full_support(const std::string& outcome)
        : error("predicted state has zero mass at outcome '" + outcome + "'"),
          outcome_(outcome) {}
    const std::string& outcome() const { return outcome_; }

private:
    std::string outcome_;
};

class zero_prediction_at_point : public error {
public:
    using error::error;
};

class invalid_test : public error {
public:
    using error::error;
};

class zero_validity_in_test : public error {
public:
    using error::error;
};

class bad_weights : public error {
public:
    using error::error;
};

class not_symmetric : public error {
public:
    using error::error;
};

class no_convergence : public error {
public:
    using error::error;
};

class not_positive_definite : public error {
public:
    using error::error;
};

class overflow : public error {
public:
    using error::error;
};

class non_positive_vector : public error {
public:
    using error::error;
};

class support_violation : public error {
public:
    using error::error;
};

class parse_error : public error {
public:
    using error::error;
};

// Scenario-level validation failure; carries the path of the offending field.
class validation_error : public error {
public:
    validation_error(const std::string& field, const std::string& msg)
        : error(field + ": " + msg), field_(field) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

class invalid_argument : public error {
public:
    using error::error;
};

} // namespace channelkit
