#pragma once

#include <stdexcept>
#include <string>

namespace starsense {

// Base of all toolkit errors. `stage` tags which pipeline stage raised the
// error so the CLI can map it to an exit code.
class Error : public std::runtime_error {
public:
    Error(std::string stage, const std::string& message)
        : std::runtime_error(stage + ": " + message), stage_(std::move(stage)) {}

    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

#define STARSENSE_DEFINE_ERROR(Name)                                  \
    class Name : public Error {                                       \
    public:                                                           \
        explicit Name(const std::string& message, std::string stage = #Name) \
            : Error(std::move(stage), message) {}                     \
    }

STARSENSE_DEFINE_ERROR(ConfigError);
STARSENSE_DEFINE_ERROR(IoError);
STARSENSE_DEFINE_ERROR(MissingColumnError);
STARSENSE_DEFINE_ERROR(TypeConflictError);
STARSENSE_DEFINE_ERROR(UnknownCategoryError);
STARSENSE_DEFINE_ERROR(MalformedLineError);
STARSENSE_DEFINE_ERROR(RowMismatchError);
STARSENSE_DEFINE_ERROR(ConstantVectorError);
STARSENSE_DEFINE_ERROR(InvalidHyperparamError);
STARSENSE_DEFINE_ERROR(EmptyDataError);
STARSENSE_DEFINE_ERROR(SingleClassDataError);
STARSENSE_DEFINE_ERROR(DimensionMismatchError);
STARSENSE_DEFINE_ERROR(TaskMismatchError);
STARSENSE_DEFINE_ERROR(TooFewRowsError);
STARSENSE_DEFINE_ERROR(LengthMismatchError);
STARSENSE_DEFINE_ERROR(EmptyInputError);
STARSENSE_DEFINE_ERROR(UnsupportedModelError);
STARSENSE_DEFINE_ERROR(EmptyBackgroundError);
STARSENSE_DEFINE_ERROR(ConstantFeatureError);
STARSENSE_DEFINE_ERROR(NonFiniteValueError);
STARSENSE_DEFINE_ERROR(NonIntegerTargetError);
STARSENSE_DEFINE_ERROR(SerializationError);

#undef STARSENSE_DEFINE_ERROR

}  // namespace starsense
