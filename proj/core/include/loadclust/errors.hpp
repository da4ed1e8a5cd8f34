#ifndef LOADCLUST_ERRORS_HPP
#define LOADCLUST_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace loadclust {

// Base for all domain errors. `code()` is the stable machine-readable name
// printed by the CLI on data errors.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define LOADCLUST_DEFINE_ERROR(Name)                              \
    class Name : public Error {                                   \
    public:                                                       \
        explicit Name(const std::string& what) : Error(#Name, what) {} \
    }

LOADCLUST_DEFINE_ERROR(MalformedLine);
LOADCLUST_DEFINE_ERROR(NegativePower);
LOADCLUST_DEFINE_ERROR(EmptySlice);
LOADCLUST_DEFINE_ERROR(InsufficientDays);
LOADCLUST_DEFINE_ERROR(UnknownAttribute);
LOADCLUST_DEFINE_ERROR(BadCount);
LOADCLUST_DEFINE_ERROR(TooManyClusters);
LOADCLUST_DEFINE_ERROR(InstanceTooLarge);
LOADCLUST_DEFINE_ERROR(LengthMismatch);
LOADCLUST_DEFINE_ERROR(EmptySet);
LOADCLUST_DEFINE_ERROR(EmptyCluster);
LOADCLUST_DEFINE_ERROR(SingleCluster);
LOADCLUST_DEFINE_ERROR(CoincidentCentres);
LOADCLUST_DEFINE_ERROR(FewerThanTwoEligibleClusters);
LOADCLUST_DEFINE_ERROR(IoError);

#undef LOADCLUST_DEFINE_ERROR

}  // namespace loadclust

#endif
