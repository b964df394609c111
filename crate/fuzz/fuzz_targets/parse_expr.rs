#![no_main]

use std::sync::Arc;

use ciperiod_core::polyparse::{parse, render};
use ciperiod_core::VariableContext;
use libfuzzer_sys::fuzz_target;

// first byte picks the context; a successful parse must survive a render round trip
fuzz_target!(|data: &[u8]| {
    let Some((&sel, rest)) = data.split_first() else {
        return;
    };
    let ctx = match sel % 3 {
        0 => VariableContext::new(2, vec![3]),
        1 => VariableContext::new(3, vec![2, 2]),
        _ => VariableContext::new(4, vec![5]),
    };
    let ctx = Arc::new(ctx.unwrap());
    if let Ok(s) = std::str::from_utf8(rest) {
        if let Ok(a) = parse(s, &ctx) {
            assert_eq!(parse(&render(&a), &ctx).unwrap(), a);
        }
    }
});
