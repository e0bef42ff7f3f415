#pragma once

#include <stdexcept>
#include <string>

namespace epsball {

// Bad data or bad parameters: the request can never succeed as stated.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Filesystem or stream failure: the request might succeed elsewhere.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace epsball
