#include "cga/engine.hpp"

namespace cga {

char to_char(EventClass e) noexcept {
    switch (e) {
        case EventClass::L: return 'L';
        case EventClass::R: return 'R';
        case EventClass::M: return 'M';
    }
    return '?';
}

}  // namespace cga
