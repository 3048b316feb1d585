use carlitz_core::Field;

const ORDERS: [u64; 8] = [2, 3, 4, 7, 8, 9, 25, 27];

/// First byte picks the field, the rest is the input text.
pub fn split(data: &[u8]) -> Option<(Field, &str)> {
    let (&k, rest) = data.split_first()?;
    let field = Field::from_order(ORDERS[k as usize % ORDERS.len()]).ok()?;
    Some((field, std::str::from_utf8(rest).ok()?))
}
