#include "core/verify.hpp"
