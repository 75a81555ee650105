#pragma once

#include <stdexcept>
#include <string>

namespace slidewb {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ImageIoError : public Error {
public:
    using Error::Error;
};

// A colour channel carries no signal (all zeros, zero mean, zero illuminant
// component) and a diagonal correction cannot be formed for it.
class DegenerateChannelError : public Error {
public:
    DegenerateChannelError(char channel, const std::string& what)
        : Error(what), channel_(channel) {}

    char channel() const noexcept { return channel_; }

private:
    char channel_;
};

class UnknownMethodError : public Error {
public:
    using Error::Error;
};

class NotImplementedError : public Error {
public:
    using Error::Error;
};

}  // namespace slidewb
