#include <stdio.h>
#include "swtree.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "line %d: %s\n", __LINE__, #cond); return 1; } } while (0)

int main(void) {
    int64_t init[9] = {1, 3, 5, 7, 9, 11, 13, 15, 17};
    SwTree *t = NULL;
    CHECK(sw_tree_new("wrap-add", init, 9, &t) == SW_STATUS_OK);
    CHECK(sw_tree_len(t) == 9);

    int64_t v = 0;
    CHECK(sw_tree_prefix(t, 7, &v, 1) == SW_STATUS_OK && v == 49);
    int64_t d = 100;
    CHECK(sw_tree_update(t, 2, &d, 1) == SW_STATUS_OK);
    CHECK(sw_tree_prefix(t, 3, &v, 1) == SW_STATUS_OK && v == 109);
    CHECK(sw_tree_prefix(t, 10, &v, 1) == SW_STATUS_OUT_OF_RANGE);
    CHECK(sw_last_error() != NULL);
    sw_tree_free(t);

    size_t phantoms = 0;
    CHECK(sw_phantom_count(1024, &phantoms) == SW_STATUS_OK && phantoms == 1023);
    CHECK(sw_tree_new("nope", init, 1, &t) == SW_STATUS_UNKNOWN_GROUP && t == NULL);
    printf("smoke ok: %s\n", sw_status_message(SW_STATUS_OK));
    return 0;
}
