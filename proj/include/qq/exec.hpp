#pragma once

#include <stdexcept>
#include <string>

namespace qq {

/// Selects the OpenMP kernel or the serial reference it is tested against.
enum class Exec { serial, parallel };

/// Raised when a request exceeds a configured size limit.
class ResourceCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Sets the OpenMP thread count; 0 keeps the runtime default.
void set_thread_count(int threads);
int thread_count();

/// Reads QQ_THREADS from the environment, 0 when unset or invalid.
int default_thread_count_from_env();

}  // namespace qq
