//! Shared fixture sentences.

#![allow(dead_code)]

pub mod reference;

pub const S1: &str =
    "孫男二人：長應運，登丙戌進士第，儒林郎、兩浙轉運司物料官，即亨之也；次應龍，習舉子業。";
pub const S2: &str = "孫男五人：汝直、汝敦、汝平、汝功、汝能、皆業進士。";
pub const S3: &str = "孫男六人：曰夷仲，曰虞仲，曰於仲，曰南仲，曰武仲，曰延仲。";
pub const S4: &str = "孫男二十人：長仲俶，右武衛大將軍、眉州刺史；次仲誘，右武衛大將軍、茂州刺史；次仲虺，右武衛大將軍、春州刺史；次仲瑩，右監門衛大將軍；次仲沃、仲芮、仲雪、仲敵、仲靡，并右千牛衛將軍；次仲頌、仲雷、仲吟、仲麟、仲逢，并太子右監門率府率；次仲誥、仲諲、仲慥，并太子右內率府率；餘未命。";

pub const ALL: [&str; 4] = [S1, S2, S3, S4];

pub const C1: &str = "孫男二人/wm/長應運/wsep/登丙戌/no_noc/第/wsep/no_noc/wsep/兩浙/no_noc/wsep/即亨之也/wsep/次應龍/wsep/習舉子業";
pub const C2: &str = "孫男五人/wm/汝直/wsep/汝敦/wsep/汝平/wsep/汝功/wsep/汝能/wsep/皆/vno/no_noc/";
pub const C4: &str = "孫男二十人/wm/長仲俶/wsep/no_noc/wsep/ns/no_noc/wsep/次仲誘/wsep/no_noc/wsep/ns/no_noc/wsep/次仲虺/wsep/no_noc/wsep/ns/no_noc/wsep/次仲瑩/wsep/no_noc/wsep/次仲沃/wsep/仲芮/wsep/仲雪/wsep/仲敵/wsep/仲靡/wsep/并/no_noc/wsep/次仲頌/wsep/仲雷/wsep/仲吟/wsep/仲麟/wsep/仲逢/wsep/并/no_noc/wsep/次仲誥/wsep/仲諲/wsep/仲慥/wsep/并/no_noc/wsep/餘未命";

pub const D1: &str =
    "孫男二人/wm/應運/wsep/丙戌/no_noc//wsep//no_noc//wsep//no_noc//wsep/即亨之/wsep/應龍/wsep/";
pub const D2: &str = "孫男五人/wm/汝直/wsep/汝敦/wsep/汝平/wsep/汝功/wsep/汝能/wsep//vno//no_noc/";
pub const D3: &str = "孫男六人/wm/夷仲/wsep/虞仲/wsep/於仲/wsep/南仲/wsep/武仲/wsep/延仲";
pub const D4: &str = "孫男二十人/wm/仲俶/wsep//no_noc//wsep//ns//no_noc//wsep/仲誘/wsep//no_noc//wsep//ns//no_noc//wsep/仲虺/wsep//no_noc//wsep//ns//no_noc//wsep/仲瑩/wsep//no_noc//wsep/仲沃/wsep/仲芮/wsep/仲雪/wsep/仲敵/wsep/仲靡/wsep//no_noc//wsep/仲頌/wsep/仲雷/wsep/仲吟/wsep/仲麟/wsep/仲逢/wsep//no_noc//wsep/仲誥/wsep/仲諲/wsep/仲慥/wsep//no_noc//wsep/";
