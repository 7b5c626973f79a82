#pragma once

#include <stdexcept>
#include <string>

namespace portfolio {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SingularMatrixError : Error { using Error::Error; };
struct EmptyVectorError : Error { using Error::Error; };
struct SingularBasisError : Error { using Error::Error; };
struct InfeasibleError : Error { using Error::Error; };
struct UnboundedError : Error { using Error::Error; };
struct InvalidParamError : Error { using Error::Error; };
struct NegativeWeightError : Error { using Error::Error; };
struct TooFewNodesError : Error { using Error::Error; };
struct SchemaMismatchError : Error { using Error::Error; };
struct SchemaUnknownError : Error { using Error::Error; };
struct MissingRecordError : Error { using Error::Error; };
struct MissingModelError : Error { using Error::Error; };
struct NonFiniteLossError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace portfolio
